#ifndef KSUB_TRIALS_HPP_
#define KSUB_TRIALS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ksub/algorithms.hpp"
#include "ksub/generate.hpp"
#include "ksub/properties.hpp"
#include "ksub/validators.hpp"

namespace ksub {

struct TrialFailure {
    std::uint64_t trial = 0;
    std::string detail;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct TrialSummary {
    TrialSummary() = default;
    explicit TrialSummary(std::string name) : checker(std::move(name)) {}

    std::string checker;
    std::uint64_t trials = 0;
    std::uint64_t passed = 0;
    std::uint64_t skipped = 0; // draws discarded before a trial could be built
    std::optional<TrialFailure> first_failure;

    bool all_passed() const { return passed == trials; }

    void record(bool ok, std::uint64_t trial, const std::string &detail, double lhs, double rhs) {
        ++trials;
        if (ok)
            ++passed;
        else if (!first_failure)
            first_failure = TrialFailure{trial, detail, lhs, rhs};
    }
};

/// Marginal-sum inequality trials over S ⊆ S' drawn for one fixed oracle.
template <ValueOracle O>
TrialSummary lemma1_trials(const O &oracle, std::uint64_t seed, std::uint64_t trials) {
    Rng rng(seed);
    TrialSummary out("lemma1");
    for (std::uint64_t t = 0; t < trials; ++t) {
        Assignment big = random_assignment(rng, oracle.items(), oracle.dims(), 0.6);
        Assignment small = random_subassignment(rng, big);
        auto r = check_lemma1(oracle, small, big);
        out.record(r.holds, t, "S=" + to_string(small) + " S'=" + to_string(big), r.lhs, r.rhs);
    }
    return out;
}

/// Marginal-sum inequality trials over a pool of generated coverage and
/// separable-sum oracles (n <= 8, k <= 3), each certified monotone and orthant submodular before
/// use. A pool oracle that fails validation counts as a failed trial.
inline TrialSummary lemma1_trials(std::uint64_t seed, std::uint64_t trials) {
    Rng rng(seed);
    TrialSummary out("lemma1");
    std::vector<Problem> pool;
    for (int p = 0; p < 12; ++p) {
        int n = detail::uniform_int(rng, 3, 8);
        int k = detail::uniform_int(rng, 1, 3);
        Family fam = p % 2 == 0 ? Family::coverage : Family::separable_sum;
        pool.push_back(generate_problem(rng, n, k, fam, 10, 0.5, "pool" + std::to_string(p)));
        const auto &o = pool.back().oracle;
        if (!validate_monotone(o, n, k).passed || !validate_orthant_submodular(o, n, k).passed)
            out.record(false, 0, "pool oracle " + pool.back().name + " failed validation", 0.0, 0.0);
    }
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto &p = pool[static_cast<std::size_t>(detail::uniform_int(rng, 0, static_cast<int>(pool.size()) - 1))];
        Assignment big = random_assignment(rng, p.instance.n(), p.instance.k(), 0.6);
        Assignment small = random_subassignment(rng, big);
        auto r = check_lemma1(p.oracle, small, big);
        out.record(r.holds, t, p.name + ": S=" + to_string(small) + " S'=" + to_string(big), r.lhs, r.rhs);
    }
    return out;
}

inline TrialSummary wolsey_trials(std::uint64_t seed, std::uint64_t trials) {
    Rng rng(seed);
    TrialSummary out("wolsey");
    for (std::uint64_t t = 0; t < trials; ++t) {
        WolseyInput in = random_wolsey_input(rng);
        auto r = check_wolsey(in);
        double rhs = r.ratio < r.middle - kTolerance ? r.middle : r.lower;
        double lhs = r.ratio < r.middle - kTolerance ? r.ratio : r.middle;
        out.record(r.holds, t, "P=" + std::to_string(in.P) + " D=" + std::to_string(in.D), lhs, rhs);
    }
    return out;
}

/// Where the T of an inequality (2) scenario comes from.
enum class Eq2Population {
    optimal,   // T is an exact optimum of a generated knapsack instance
    arbitrary, // T is any random assignment with |T| >= 4
};

namespace detail {

inline Assignment random_z(Rng &rng, const std::vector<Pair> &order, int j, int n, int k) {
    std::vector<bool> reserved(static_cast<std::size_t>(n) + 1, false);
    for (int t = 0; t < 3; ++t)
        reserved[static_cast<std::size_t>(order[static_cast<std::size_t>(t)].item.value)] = true;
    reserved[static_cast<std::size_t>(order[static_cast<std::size_t>(j - 1)].item.value)] = true;
    if (std::bernoulli_distribution(0.25)(rng))
        return {};
    std::vector<Pair> z;
    std::bernoulli_distribution take(0.5);
    for (int a = 1; a <= n; ++a)
        if (!reserved[static_cast<std::size_t>(a)] && take(rng))
            z.push_back({ItemId{a}, Dimension{uniform_int(rng, 1, k)}});
    return Assignment(std::move(z));
}

} // namespace detail

/// Inequality (2) on coverage instances with n in [5, 8], k in [2, 3].
/// Every trial also confirms that the reorder is greedy prefix by prefix.
/// Draws whose optimum has fewer than four pairs are skipped.
inline TrialSummary eq2_trials(std::uint64_t seed, std::uint64_t trials, Eq2Population population,
                               std::uint64_t cap = StateSpace::kDefaultCap) {
    Rng rng(seed);
    TrialSummary out(population == Eq2Population::optimal ? "eq2" : "eq2-arbitrary");
    const std::uint64_t max_draws = 50 * trials + 100;
    std::uint64_t draws = 0;
    while (out.trials < trials && draws < max_draws) {
        ++draws;
        int n = detail::uniform_int(rng, 5, 8);
        int k = detail::uniform_int(rng, 2, 3);
        static constexpr double kFractions[] = {0.6, 0.8, 1.0};
        double frac = kFractions[detail::uniform_int(rng, 0, 2)];
        Problem p = generate_problem(rng, n, k, Family::coverage, 10, frac, "eq2-" + std::to_string(draws));

        Assignment t;
        if (population == Eq2Population::optimal) {
            EvalCounter unused;
            t = exact_bruteforce(p.oracle, p.instance, unused, cap).solution;
        } else {
            t = random_assignment(rng, n, k, 0.8);
        }
        if (t.size() < 4) {
            ++out.skipped;
            continue;
        }

        EvalCounter counter;
        Eq2Scenario sc;
        sc.order = greedy_reorder(p.oracle, t, counter);
        sc.j = detail::uniform_int(rng, 4, static_cast<int>(sc.order.size()));
        sc.z = detail::random_z(rng, sc.order, sc.j, n, k);

        std::string detail = p.name + ": T=" + to_string(t) + " j=" + std::to_string(sc.j) + " Z=" + to_string(sc.z);
        if (!is_greedy_order(p.oracle, sc.order, counter)) {
            out.record(false, out.trials, detail + " (reorder is not greedy)", 0.0, 0.0);
            continue;
        }
        auto r = check_eq2(p.oracle, sc, counter);
        out.record(r.holds, out.trials, detail, r.lhs, r.rhs);
    }
    return out;
}

/// Inequality (2) for one fixed oracle with T drawn at random (|T| >= 4).
template <ValueOracle O>
TrialSummary eq2_trials(const O &oracle, std::uint64_t seed, std::uint64_t trials) {
    Rng rng(seed);
    TrialSummary out("eq2");
    const int n = oracle.items();
    const int k = oracle.dims();
    if (n < 4)
        throw PreconditionViolated("inequality (2) scenarios need at least 4 items");
    while (out.trials < trials) {
        Assignment t = random_assignment(rng, n, k, 0.8);
        if (t.size() < 4) {
            ++out.skipped;
            continue;
        }
        EvalCounter counter;
        Eq2Scenario sc;
        sc.order = greedy_reorder(oracle, t, counter);
        sc.j = detail::uniform_int(rng, 4, static_cast<int>(sc.order.size()));
        sc.z = detail::random_z(rng, sc.order, sc.j, n, k);
        std::string detail = "T=" + to_string(t) + " j=" + std::to_string(sc.j) + " Z=" + to_string(sc.z);
        auto r = check_eq2(oracle, sc, counter);
        out.record(r.holds, out.trials, detail, r.lhs, r.rhs);
    }
    return out;
}

} // namespace ksub

#endif // KSUB_TRIALS_HPP_
