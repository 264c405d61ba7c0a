#ifndef KSUB_ALGORITHMS_HPP_
#define KSUB_ALGORITHMS_HPP_

#include <cstdint>
#include <vector>

#include "ksub/core.hpp"
#include "ksub/oracles.hpp"

namespace ksub {

struct GreedyStep {
    int step = 0;
    Pair chosen;
    double density = 0.0;
    double gain = 0.0;
    bool accepted = false;
    std::int64_t cumulative_cost = 0; // c(S^t) after this step
};

/// Per-step record of one density completion. Densities are recorded, not
/// asserted monotone.
struct GreedyTrace {
    std::vector<GreedyStep> steps;
};

namespace detail {

struct GainEval {
    double before;
    double after;
    double gain() const { return after - before; }
};

template <ValueOracle O>
GainEval gain_eval(const O &oracle, const Assignment &s, Pair p, EvalCounter &counter) {
    if (s.contains_item(p.item))
        throw PreconditionViolated("item " + std::to_string(p.item.value) + " is already in " + to_string(s));
    double after = evaluate(oracle, s.with(p), counter);
    double before = evaluate(oracle, s, counter);
    return {before, after};
}

inline void require_matching(int oracle_items, int oracle_dims, const Instance &inst) {
    if (oracle_items != inst.n() || oracle_dims != inst.k())
        throw MalformedInput("oracle is over n=" + std::to_string(oracle_items) + ", k=" + std::to_string(oracle_dims) +
                             " but the instance has n=" + std::to_string(inst.n()) + ", k=" + std::to_string(inst.k()));
}

} // namespace detail

/// Greedy without constraint: items in increasing id order, each placed in
/// the dimension of largest marginal gain (lowest dimension on ties).
/// Uses exactly 2nk evaluations.
template <ValueOracle O>
SolveReport unconstrained_greedy(const O &oracle, int n, int k, EvalCounter &counter) {
    if (n < 0 || k < 1 || n > oracle.items() || k > oracle.dims())
        throw MalformedInput("unconstrained greedy needs 0 <= n <= oracle items and 1 <= k <= oracle dims");
    EvalCounter local;
    Assignment s;
    double value = 0.0;
    for (int a = 1; a <= n; ++a) {
        int best_dim = 0;
        double best_gain = 0.0;
        double best_after = 0.0;
        for (int i = 1; i <= k; ++i) {
            auto g = detail::gain_eval(oracle, s, {ItemId{a}, Dimension{i}}, local);
            if (best_dim == 0 || g.gain() > best_gain) {
                best_dim = i;
                best_gain = g.gain();
                best_after = g.after;
            }
        }
        s = s.with({ItemId{a}, Dimension{best_dim}});
        value = best_after;
    }
    counter.merge(local);
    return {Algorithm::unconstrained_greedy, std::move(s), value, local.count, std::nullopt, std::nullopt};
}

/// Density completion from a seed: repeatedly take the remaining
/// (item, dimension) of largest Δ_{a,i}(S)/c_a (ties to lowest item, then
/// lowest dimension), add it if it fits the budget, and drop the item from
/// the candidates either way. Runs until no candidates are left.
template <ValueOracle O>
Assignment density_completion(const O &oracle, const Instance &inst, const Assignment &seed, EvalCounter &counter,
                              GreedyTrace *trace = nullptr) {
    std::vector<ItemId> candidates;
    for (int a = 1; a <= inst.n(); ++a)
        if (!seed.contains_item(ItemId{a}))
            candidates.push_back(ItemId{a});

    Assignment s = seed;
    std::int64_t used = cost(seed, inst);
    int step = 0;
    while (!candidates.empty()) {
        ++step;
        std::size_t best_index = 0;
        Pair best{};
        double best_density = 0.0;
        double best_gain = 0.0;
        bool have_best = false;
        for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
            ItemId a = candidates[idx];
            auto c = static_cast<double>(inst.cost_of(a));
            for (int i = 1; i <= inst.k(); ++i) {
                double gain = detail::gain_eval(oracle, s, {a, Dimension{i}}, counter).gain();
                double density = gain / c;
                if (!have_best || density > best_density) {
                    have_best = true;
                    best_index = idx;
                    best = {a, Dimension{i}};
                    best_density = density;
                    best_gain = gain;
                }
            }
        }
        std::int64_t c = inst.cost_of(best.item);
        bool accepted = used + c <= inst.budget();
        if (accepted) {
            s = s.with(best);
            used += c;
        }
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best_index));
        if (trace)
            trace->steps.push_back({step, best, best_density, best_gain, accepted, used});
    }
    return s;
}

/// Greedy under a knapsack constraint. Phase 1 takes the best feasible
/// assignment of size 1 or 2; phase 2 density-completes every feasible
/// size-3 seed and keeps a completion only if it is strictly better.
/// Candidates are enumerated in lexicographic order, so value ties go to
/// the lexicographically smallest assignment.
template <ValueOracle O>
SolveReport knapsack_greedy(const O &oracle, const Instance &inst, EvalCounter &counter) {
    detail::require_matching(oracle.items(), oracle.dims(), inst);
    const int n = inst.n();
    const int k = inst.k();
    const std::int64_t budget = inst.budget();
    auto c = [&](int a) { return inst.cost_of(ItemId{a}); };

    EvalCounter local;
    Assignment best;
    double best_value = 0.0;
    bool found = false;
    auto offer = [&](Assignment cand, double v) {
        if (!found || v > best_value) {
            found = true;
            best = std::move(cand);
            best_value = v;
        }
    };

    for (int a1 = 1; a1 <= n; ++a1) {
        if (c(a1) > budget)
            continue;
        for (int i1 = 1; i1 <= k; ++i1) {
            Assignment one{{ItemId{a1}, Dimension{i1}}};
            offer(one, evaluate(oracle, one, local));
            for (int a2 = a1 + 1; a2 <= n; ++a2) {
                if (c(a1) + c(a2) > budget)
                    continue;
                for (int i2 = 1; i2 <= k; ++i2) {
                    Assignment two = one.with({ItemId{a2}, Dimension{i2}});
                    offer(two, evaluate(oracle, two, local));
                }
            }
        }
    }

    for (int a1 = 1; a1 <= n; ++a1) {
        for (int a2 = a1 + 1; a2 <= n; ++a2) {
            for (int a3 = a2 + 1; a3 <= n; ++a3) {
                if (c(a1) + c(a2) + c(a3) > budget)
                    continue;
                for (int i1 = 1; i1 <= k; ++i1)
                    for (int i2 = 1; i2 <= k; ++i2)
                        for (int i3 = 1; i3 <= k; ++i3) {
                            Assignment seed{{ItemId{a1}, Dimension{i1}},
                                            {ItemId{a2}, Dimension{i2}},
                                            {ItemId{a3}, Dimension{i3}}};
                            Assignment done = density_completion(oracle, inst, seed, local);
                            double v = evaluate(oracle, done, local);
                            if (v > best_value) {
                                best = std::move(done);
                                best_value = v;
                            }
                        }
            }
        }
    }

    counter.merge(local);
    return {Algorithm::knapsack_greedy, std::move(best), best_value, local.count, std::nullopt, std::nullopt};
}

/// Exhaustive optimum over every feasible assignment (ties to the
/// lexicographically smallest). Only feasible assignments are evaluated.
template <ValueOracle O>
SolveReport exact_bruteforce(const O &oracle, const Instance &inst, EvalCounter &counter,
                             std::uint64_t cap = StateSpace::kDefaultCap) {
    detail::require_matching(oracle.items(), oracle.dims(), inst);
    StateSpace space(inst.n(), inst.k());
    auto states = space.require_within(cap);

    EvalCounter local;
    Assignment best;
    double best_value = 0.0;
    bool found = false;
    for (std::uint64_t code = 0; code < states; ++code) {
        Assignment s = space.decode(code);
        if (!feasible(s, inst))
            continue;
        double v = evaluate(oracle, s, local);
        if (!found || v > best_value || (v == best_value && s < best)) {
            found = true;
            best = std::move(s);
            best_value = v;
        }
    }
    counter.merge(local);
    return {Algorithm::exact, std::move(best), best_value, local.count, std::nullopt, std::nullopt};
}

/// Worst-case evaluation count of knapsack_greedy:
///
///   n k + C(n,2) k^2 + C(n,3) k^3 (k (n-3)(n-2) + 1)
///
/// Phase 1 evaluates each candidate of size 1 or 2 once. Each phase-2 seed
/// runs n-3 selection steps; step t scores (n-2-t) k pairs at two
/// evaluations apiece, and the completed set is evaluated once more.
/// The bound never exceeds kCountBoundConstant * n^5 k^4.
inline std::uint64_t count_bound(int n, int k) {
    if (n < 1 || k < 1)
        throw MalformedInput("count_bound needs n, k >= 1");
    auto N = static_cast<std::uint64_t>(n);
    auto K = static_cast<std::uint64_t>(k);
    std::uint64_t phase1 = N * K + N * (N - 1) / 2 * K * K;
    std::uint64_t seeds = N * (N - 1) * (N - 2) / 6 * K * K * K;
    std::uint64_t per_seed = n >= 3 ? K * (N - 3) * (N - 2) + 1 : 0;
    return phase1 + seeds * per_seed;
}

/// count_bound(n, k) <= kCountBoundConstant * n^5 k^4 for all n, k >= 1;
/// the four terms are at most 1, 1/2, 1/6 and 1/6 of n^5 k^4.
inline constexpr std::uint64_t kCountBoundConstant = 2;

} // namespace ksub

#endif // KSUB_ALGORITHMS_HPP_
