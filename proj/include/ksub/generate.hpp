#ifndef KSUB_GENERATE_HPP_
#define KSUB_GENERATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ksub/core.hpp"
#include "ksub/oracles.hpp"
#include "ksub/problem.hpp"
#include "ksub/properties.hpp"

namespace ksub {

// All randomness comes from std::mt19937_64 and the libstdc++
// distributions: a seed reproduces its output within one build, not
// across standard libraries.
using Rng = std::mt19937_64;

enum class Family { coverage, separable_sum, tabular };

inline std::string_view to_string(Family f) {
    switch (f) {
    case Family::coverage:
        return "coverage";
    case Family::separable_sum:
        return "separable_sum";
    case Family::tabular:
        return "tabular";
    }
    return "unknown";
}

inline std::optional<Family> parse_family(std::string_view name) {
    std::string s(name);
    std::replace(s.begin(), s.end(), '-', '_');
    if (s == "coverage")
        return Family::coverage;
    if (s == "separable_sum")
        return Family::separable_sum;
    if (s == "tabular")
        return Family::tabular;
    return std::nullopt;
}

struct GeneratorOptions {
    std::uint64_t seed = 0;
    int n = 4;
    int k = 2;
    Family family = Family::coverage;
    std::int64_t cost_max = 10;
    double budget_fraction = 0.5;
};

namespace detail {

inline int uniform_int(Rng &rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline double uniform_real(Rng &rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// Rounds to three decimals so generated files hold short decimal literals.
inline double milli(double v) { return std::round(v * 1000.0) / 1000.0; }

/// Universe of 2n unit-weight elements; each (item, dim) covers each
/// element independently with probability 1/2.
inline CoveragePayload random_coverage_payload(Rng &rng, int n, int k, bool integer_weights = false) {
    CoveragePayload payload;
    const int universe = 2 * n;
    for (int e = 1; e <= universe; ++e)
        payload.elements.push_back({"e" + std::to_string(e), integer_weights ? uniform_int(rng, 1, 3) : 1.0});
    std::bernoulli_distribution coin(0.5);
    for (int a = 1; a <= n; ++a)
        for (int i = 1; i <= k; ++i) {
            CoveragePayload::Cover c{ItemId{a}, Dimension{i}, {}};
            for (int e = 1; e <= universe; ++e)
                if (coin(rng))
                    c.elements.push_back("e" + std::to_string(e));
            payload.covers.push_back(std::move(c));
        }
    return payload;
}

/// Masses uniform in [0, 1]; each cap is a uniform fraction in [1/4, 3/4]
/// of that dimension's total mass.
inline SeparableSumPayload random_separable_payload(Rng &rng, int n, int k) {
    SeparableSumPayload payload;
    for (int i = 1; i <= k; ++i) {
        SeparableSumPayload::Term term;
        double total = 0.0;
        for (int a = 1; a <= n; ++a) {
            double m = milli(uniform_real(rng, 0.0, 1.0));
            term.masses.push_back(m);
            total += m;
        }
        term.cap = milli(uniform_real(rng, 0.25, 0.75) * total);
        payload.dims.push_back(std::move(term));
    }
    return payload;
}

} // namespace detail

/// max(1, floor(fraction * Σ costs)); a tiny upward nudge keeps products
/// such as 0.3 * 30 from flooring to 8.
inline std::int64_t budget_for(std::int64_t total_cost, double fraction) {
    auto b = static_cast<std::int64_t>(std::floor(fraction * static_cast<double>(total_cost) + 1e-9));
    return std::max<std::int64_t>(1, b);
}

inline Problem generate_problem(Rng &rng, int n, int k, Family family, std::int64_t cost_max, double budget_fraction,
                                std::string name) {
    if (n < 1 || k < 1)
        throw MalformedInput("generation needs n >= 1 and k >= 1");
    if (cost_max < 1)
        throw MalformedInput("cost-max must be at least 1");
    if (!(budget_fraction > 0.0 && budget_fraction <= 1.0))
        throw MalformedInput("budget-fraction must lie in (0, 1]");

    std::vector<std::int64_t> costs;
    std::uniform_int_distribution<std::int64_t> cost_dist(1, cost_max);
    for (int a = 0; a < n; ++a)
        costs.push_back(cost_dist(rng));
    std::int64_t total = 0;
    for (auto c : costs)
        total += c;
    Instance inst(k, std::move(costs), budget_for(total, budget_fraction));

    switch (family) {
    case Family::coverage:
        return {std::move(name), std::move(inst), CoverageOracle(n, k, detail::random_coverage_payload(rng, n, k))};
    case Family::separable_sum:
        return {std::move(name), std::move(inst), SeparableSumOracle(n, k, detail::random_separable_payload(rng, n, k))};
    case Family::tabular: {
        StateSpace space(n, k);
        space.require_within(StateSpace::kDefaultCap);
        CoverageOracle source(n, k, detail::random_coverage_payload(rng, n, k, true));
        EvalCounter unused;
        return {std::move(name), std::move(inst), TabularOracle(n, k, tabulate(source, space, unused))};
    }
    }
    throw MalformedInput("unknown oracle family");
}

inline Problem generate_problem(const GeneratorOptions &opt) {
    Rng rng(opt.seed);
    return generate_problem(rng, opt.n, opt.k, opt.family, opt.cost_max, opt.budget_fraction,
                            "seed" + std::to_string(opt.seed) + "-n" + std::to_string(opt.n) + "-k" +
                                std::to_string(opt.k) + "-" + std::string(to_string(opt.family)));
}

/// Each item is assigned with probability `density`, to a uniform dimension.
inline Assignment random_assignment(Rng &rng, int n, int k, double density = 0.5) {
    std::bernoulli_distribution take(density);
    std::vector<Pair> pairs;
    for (int a = 1; a <= n; ++a)
        if (take(rng))
            pairs.push_back({ItemId{a}, Dimension{detail::uniform_int(rng, 1, k)}});
    return Assignment(std::move(pairs));
}

/// A uniformly random subset of the pairs of s.
inline Assignment random_subassignment(Rng &rng, const Assignment &s) {
    std::bernoulli_distribution keep(0.5);
    std::vector<Pair> pairs;
    for (const auto &p : s)
        if (keep(rng))
            pairs.push_back(p);
    return Assignment(std::move(pairs));
}

/// How a random monotone table is built.
enum class TableStyle {
    coverage,       // tabulated weighted coverage: k-submodular
    increments,     // f(x) = max over one-smaller y of f(y), plus U[0,1]: monotone, usually not k-submodular
    perturbed,      // coverage plus a small monotone increment table: either outcome
};

/// A normalized monotone value table over (k+1)^n.
inline std::vector<double> random_monotone_table(Rng &rng, int n, int k, TableStyle style) {
    StateSpace space(n, k);
    auto size = space.require_within(StateSpace::kDefaultCap);
    EvalCounter unused;
    std::vector<double> cover(size, 0.0);
    if (style != TableStyle::increments)
        cover = tabulate(CoverageOracle(n, k, detail::random_coverage_payload(rng, n, k, true)), space, unused);
    if (style == TableStyle::coverage)
        return cover;

    // Increments over assignments ordered by size, so every one-smaller
    // predecessor is filled first.
    std::vector<std::uint64_t> order(size);
    for (std::uint64_t c = 0; c < size; ++c)
        order[c] = c;
    auto count = [&](std::uint64_t c) { return space.decode(c).size(); };
    std::stable_sort(order.begin(), order.end(), [&](auto l, auto r) { return count(l) < count(r); });
    std::vector<double> inc(size, 0.0);
    for (auto c : order) {
        if (c == 0)
            continue;
        double base = 0.0;
        for (int a = 1; a <= n; ++a) {
            int d = space.digit(c, ItemId{a});
            if (d != 0)
                base = std::max(base, inc[c - static_cast<std::uint64_t>(d) * space.weight(ItemId{a})]);
        }
        inc[c] = base + detail::milli(detail::uniform_real(rng, 0.0, 1.0));
    }
    if (style == TableStyle::increments)
        return inc;

    double scale = detail::uniform_real(rng, 0.0, 0.3);
    for (std::uint64_t c = 0; c < size; ++c)
        cover[c] += scale * inc[c];
    return cover;
}

/// P, D uniform in [1, 20]; ρ uniform in [0, 1] with ρ_1 redrawn until positive.
inline WolseyInput random_wolsey_input(Rng &rng) {
    WolseyInput w{detail::uniform_int(rng, 1, 20), detail::uniform_int(rng, 1, 20), {}};
    for (int t = 0; t < w.P; ++t)
        w.rho.push_back(detail::uniform_real(rng, 0.0, 1.0));
    while (!(w.rho[0] > 0.0))
        w.rho[0] = detail::uniform_real(rng, 0.0, 1.0);
    return w;
}

} // namespace ksub

#endif // KSUB_GENERATE_HPP_
