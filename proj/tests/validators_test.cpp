#include <gtest/gtest.h>

#include "test_support.hpp"

namespace ksub {
namespace {

using testing::A;

TEST(ValidateOrthantTest, OracleWPasses) {
    EXPECT_TRUE(validate_orthant_submodular(testing::oracle_w(), 2, 2).passed);
}

TEST(ValidateOrthantTest, SupermodularTableFailsWithFirstWitness) {
    auto f = testing::supermodular_table();
    auto v = validate_orthant_submodular(f, 2, 1);
    ASSERT_FALSE(v.passed);
    ASSERT_TRUE(v.witness);
    EXPECT_EQ(v.witness->x, Assignment{});
    EXPECT_EQ(v.witness->y, A({{2, 1}}));
    EXPECT_EQ(v.witness->added, (Pair{ItemId{1}, Dimension{1}}));
    EXPECT_EQ(v.witness->lhs, 1.0);
    EXPECT_EQ(v.witness->rhs, 2.0);
    EXPECT_TRUE(witness_reproduces(f, *v.witness));
}

TEST(ValidateOrthantTest, ModularPasses) {
    EXPECT_TRUE(validate_orthant_submodular(testing::modular_oracle(3, 2), 3, 2).passed);
}

TEST(ValidateMonotoneTest, Examples) {
    EXPECT_TRUE(validate_monotone(testing::oracle_w(), 2, 2).passed);
    TabularOracle dropping(2, 1, {0.0, 1.0, 0.5, 0.5});
    auto v = validate_monotone(dropping, 2, 1);
    ASSERT_FALSE(v.passed);
    EXPECT_EQ(v.witness->x, A({{1, 1}}));
    EXPECT_EQ(v.witness->added, (Pair{ItemId{2}, Dimension{1}}));
    EXPECT_EQ(v.witness->lhs, -0.5);
    EXPECT_TRUE(witness_reproduces(dropping, *v.witness));
    EXPECT_TRUE(validate_monotone(testing::zero_table(3, 2), 3, 2).passed);
}

TEST(ValidateLatticeTest, Examples) {
    EXPECT_TRUE(validate_lattice_ksubmodular(testing::oracle_w(), 2, 2).passed);
    EXPECT_TRUE(validate_lattice_ksubmodular(testing::zero_table(3, 2), 3, 2).passed);

    auto f = testing::supermodular_table();
    auto v = validate_lattice_ksubmodular(f, 2, 1);
    ASSERT_FALSE(v.passed);
    EXPECT_EQ(v.witness->x, A({{1, 1}}));
    EXPECT_EQ(v.witness->y, A({{2, 1}}));
    EXPECT_EQ(v.witness->lhs, 2.0);
    EXPECT_EQ(v.witness->rhs, 3.0);
    EXPECT_EQ(v.witness->terms, (std::vector<double>{1.0, 1.0, 3.0, 0.0}));
    EXPECT_TRUE(witness_reproduces(f, *v.witness));
}

TEST(ValidatorsTest, CapExceeded) {
    auto big = testing::modular_oracle(10, 3);
    EXPECT_THROW(validate_monotone(big, 10, 3), SizeLimitExceeded);
    EXPECT_THROW(validate_orthant_submodular(big, 10, 3), SizeLimitExceeded);
    ValidationLimits tight;
    tight.max_lattice_pairs = 100;
    EXPECT_THROW(validate_lattice_ksubmodular(testing::modular_oracle(3, 2), 3, 2, tight), SizeLimitExceeded);
}

// Every shipped family at n <= 5, k <= 3 passes all three validators.
TEST(ValidatorsTest, ShippedFamiliesPass) {
    Rng rng(2024);
    for (Family fam : {Family::coverage, Family::separable_sum, Family::tabular})
        for (int n = 1; n <= 5; ++n)
            for (int k = 1; k <= 3; ++k) {
                Problem p = generate_problem(rng, n, k, fam, 10, 0.5, "v");
                ASSERT_TRUE(validate_monotone(p.oracle, n, k).passed) << to_string(fam) << n << k;
                ASSERT_TRUE(validate_orthant_submodular(p.oracle, n, k).passed) << to_string(fam) << n << k;
                ASSERT_TRUE(validate_lattice_ksubmodular(p.oracle, n, k).passed) << to_string(fam) << n << k;
            }
}

// Brute-force orthant check straight from the definition, over explicit
// pairs x ⪯ y, for cross-checking the code-space validator.
template <class F>
bool reference_orthant(const F &f, int n, int k) {
    auto all = testing::all_assignments(n, k);
    for (const auto &x : all)
        for (const auto &y : all) {
            if (!precedes(x, y))
                continue;
            for (int a = 1; a <= n; ++a) {
                if (y.contains_item(ItemId{a}))
                    continue;
                for (int i = 1; i <= k; ++i) {
                    Pair p{ItemId{a}, Dimension{i}};
                    if (f.value(x.with(p)) - f.value(x) < f.value(y.with(p)) - f.value(y) - kTolerance)
                        return false;
                }
            }
        }
    return true;
}

template <class F>
bool reference_lattice(const F &f, int n, int k) {
    auto all = testing::all_assignments(n, k);
    for (const auto &x : all)
        for (const auto &y : all)
            if (f.value(x) + f.value(y) <
                f.value(testing::reference_join(x, y, k)) + f.value(testing::reference_meet(x, y, k)) - kTolerance)
                return false;
    return true;
}

TEST(ValidatorsTest, AgreeWithDefinitionsAndEachOther) {
    Rng rng(99);
    int agreeing_true = 0;
    int agreeing_false = 0;
    for (int t = 0; t < 60; ++t) {
        int n = 1 + t % 3;
        int k = 1 + (t / 3) % 3;
        auto style = static_cast<TableStyle>(t % 3);
        TabularOracle f(n, k, random_monotone_table(rng, n, k, style));
        ASSERT_TRUE(validate_monotone(f, n, k).passed);
        auto orthant = validate_orthant_submodular(f, n, k);
        auto lattice = validate_lattice_ksubmodular(f, n, k);
        ASSERT_EQ(orthant.passed, reference_orthant(f, n, k));
        ASSERT_EQ(lattice.passed, reference_lattice(f, n, k));
        ASSERT_EQ(orthant.passed, lattice.passed) << "n=" << n << " k=" << k << " t=" << t;
        if (!orthant.passed) {
            ASSERT_TRUE(witness_reproduces(f, *orthant.witness));
            ASSERT_TRUE(witness_reproduces(f, *lattice.witness));
        }
        (orthant.passed ? agreeing_true : agreeing_false)++;
    }
    // Both outcomes occur, so the agreement is not vacuous.
    EXPECT_GT(agreeing_true, 0);
    EXPECT_GT(agreeing_false, 0);
}

} // namespace
} // namespace ksub
