#ifndef KSUB_VALIDATORS_HPP_
#define KSUB_VALIDATORS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ksub/core.hpp"
#include "ksub/oracles.hpp"

namespace ksub {

/// Absolute slack for every inequality checked by the validators and the
/// property checkers.
inline constexpr double kTolerance = 1e-9;

struct ValidationLimits {
    /// Largest (k+1)^n the validators will tabulate.
    std::uint64_t max_states = StateSpace::kDefaultCap;
    /// Largest number of unordered pairs the lattice check will visit.
    std::uint64_t max_lattice_pairs = 500'000'000;
};

/// The violated inequality is always read as `lhs >= rhs - tolerance`.
struct Witness {
    std::string inequality; // "monotonicity", "orthant_submodularity" or "k_submodularity"
    Assignment x;
    Assignment y;
    std::optional<Pair> added; // (a, i) for the marginal-gain inequalities
    double lhs = 0.0;
    double rhs = 0.0;
    /// The individual f values behind lhs and rhs, lhs terms first.
    std::vector<double> terms;
};

struct ValidationVerdict {
    bool passed = true;
    std::optional<Witness> witness;
};

namespace detail {

/// Calls visit(code) for x + every assignment of the listed free items, in
/// increasing code order.
template <class Visit>
void for_each_extension(std::uint64_t base, const std::vector<std::uint64_t> &free_weights, int k, Visit &&visit) {
    std::vector<int> digit(free_weights.size(), 0);
    std::uint64_t code = base;
    while (true) {
        if (visit(code))
            return;
        std::size_t pos = 0;
        while (pos < digit.size() && digit[pos] == k) {
            code -= static_cast<std::uint64_t>(k) * free_weights[pos];
            digit[pos] = 0;
            ++pos;
        }
        if (pos == digit.size())
            return;
        ++digit[pos];
        code += free_weights[pos];
    }
}

template <ValueOracle O>
std::vector<double> tabulate_within(const O &oracle, const StateSpace &space, const ValidationLimits &limits) {
    space.require_within(limits.max_states);
    EvalCounter local;
    return tabulate(oracle, space, local);
}

} // namespace detail

/// Checks Δ_{a,i}(x) >= -ε for every x, a ∉ U(x), i ∈ [k]. The witness is
/// the first violation with x in code order, then a, then i.
template <ValueOracle O>
ValidationVerdict validate_monotone(const O &oracle, int n, int k, const ValidationLimits &limits = {}) {
    StateSpace space(n, k);
    auto table = detail::tabulate_within(oracle, space, limits);
    for (std::uint64_t x = 0; x < table.size(); ++x) {
        for (int a = 1; a <= n; ++a) {
            if (space.digit(x, ItemId{a}) != 0)
                continue;
            for (int i = 1; i <= k; ++i) {
                std::uint64_t y = x + static_cast<std::uint64_t>(i) * space.weight(ItemId{a});
                double gain = table[y] - table[x];
                if (gain < -kTolerance)
                    return {false, Witness{"monotonicity", space.decode(x), space.decode(y),
                                           Pair{ItemId{a}, Dimension{i}}, gain, 0.0, {table[y], table[x]}}};
            }
        }
    }
    return {};
}

/// Checks Δ_{a,i}(x) >= Δ_{a,i}(y) - ε for every x ⪯ y, a ∉ U(y), i ∈ [k].
/// Enumeration order (and so the witness) is x in code order, then a, then
/// i, then y over extensions of x in code order.
template <ValueOracle O>
ValidationVerdict validate_orthant_submodular(const O &oracle, int n, int k, const ValidationLimits &limits = {}) {
    StateSpace space(n, k);
    auto table = detail::tabulate_within(oracle, space, limits);
    std::optional<Witness> found;
    std::vector<std::uint64_t> free_weights;
    for (std::uint64_t x = 0; x < table.size() && !found; ++x) {
        for (int a = 1; a <= n && !found; ++a) {
            if (space.digit(x, ItemId{a}) != 0)
                continue;
            free_weights.clear();
            for (int b = 1; b <= n; ++b)
                if (b != a && space.digit(x, ItemId{b}) == 0)
                    free_weights.push_back(space.weight(ItemId{b}));
            for (int i = 1; i <= k && !found; ++i) {
                std::uint64_t step = static_cast<std::uint64_t>(i) * space.weight(ItemId{a});
                double gain_x = table[x + step] - table[x];
                detail::for_each_extension(x, free_weights, k, [&](std::uint64_t y) {
                    double gain_y = table[y + step] - table[y];
                    if (gain_x < gain_y - kTolerance) {
                        found = Witness{"orthant_submodularity", space.decode(x), space.decode(y),
                                        Pair{ItemId{a}, Dimension{i}}, gain_x, gain_y,
                                        {table[x + step], table[x], table[y + step], table[y]}};
                        return true;
                    }
                    return false;
                });
            }
        }
    }
    if (found)
        return {false, std::move(found)};
    return {};
}

/// Checks f(x) + f(y) >= f(x ⊔ y) + f(x ⊓ y) - ε over all unordered pairs
/// x <= y in code order. Needs both the state cap and the pair cap.
template <ValueOracle O>
ValidationVerdict validate_lattice_ksubmodular(const O &oracle, int n, int k, const ValidationLimits &limits = {}) {
    StateSpace space(n, k);
    auto states = space.require_within(limits.max_states);
    auto pairs = static_cast<unsigned __int128>(states) * (states + 1) / 2;
    if (pairs > limits.max_lattice_pairs)
        throw SizeLimitExceeded("lattice check over " + std::to_string(states) + " states exceeds the pair cap of " +
                                std::to_string(limits.max_lattice_pairs));
    auto table = detail::tabulate_within(oracle, space, limits);

    auto stride = static_cast<std::size_t>(n);
    std::vector<unsigned char> digits(table.size() * stride);
    for (std::uint64_t c = 0; c < table.size(); ++c)
        for (int a = 1; a <= n; ++a)
            digits[c * stride + static_cast<std::size_t>(a - 1)] = static_cast<unsigned char>(space.digit(c, ItemId{a}));

    std::vector<std::uint64_t> weight(stride);
    for (int a = 1; a <= n; ++a)
        weight[static_cast<std::size_t>(a - 1)] = space.weight(ItemId{a});

    for (std::uint64_t x = 0; x < table.size(); ++x) {
        const unsigned char *dx = &digits[x * stride];
        for (std::uint64_t y = x; y < table.size(); ++y) {
            const unsigned char *dy = &digits[y * stride];
            std::uint64_t join_code = 0;
            std::uint64_t meet_code = 0;
            for (std::size_t a = 0; a < stride; ++a) {
                unsigned char u = dx[a];
                unsigned char v = dy[a];
                if (u == v) {
                    join_code += u * weight[a];
                    meet_code += u * weight[a];
                } else if (u == 0 || v == 0) {
                    join_code += static_cast<std::uint64_t>(u + v) * weight[a];
                }
            }
            double lhs = table[x] + table[y];
            double rhs = table[join_code] + table[meet_code];
            if (lhs < rhs - kTolerance)
                return {false, Witness{"k_submodularity", space.decode(x), space.decode(y), std::nullopt, lhs, rhs,
                                       {table[x], table[y], table[join_code], table[meet_code]}}};
        }
    }
    return {};
}

/// Re-evaluates a witness against the oracle; true iff the recorded
/// inequality is still violated with the same side values.
template <ValueOracle O>
bool witness_reproduces(const O &oracle, const Witness &w) {
    EvalCounter local;
    auto f = [&](const Assignment &s) { return evaluate(oracle, s, local); };
    double lhs = 0.0;
    double rhs = 0.0;
    if (w.inequality == "monotonicity") {
        if (!w.added || w.y != w.x.with(*w.added))
            return false;
        lhs = f(w.y) - f(w.x);
        rhs = 0.0;
    } else if (w.inequality == "orthant_submodularity") {
        if (!w.added || !precedes(w.x, w.y) || w.y.contains_item(w.added->item))
            return false;
        lhs = f(w.x.with(*w.added)) - f(w.x);
        rhs = f(w.y.with(*w.added)) - f(w.y);
    } else if (w.inequality == "k_submodularity") {
        lhs = f(w.x) + f(w.y);
        rhs = f(join(w.x, w.y, oracle.dims())) + f(meet(w.x, w.y));
    } else {
        return false;
    }
    return lhs == w.lhs && rhs == w.rhs && lhs < rhs - kTolerance;
}

} // namespace ksub

#endif // KSUB_VALIDATORS_HPP_
