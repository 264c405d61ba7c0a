#ifndef KSUB_PROPERTIES_HPP_
#define KSUB_PROPERTIES_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

#include "ksub/core.hpp"
#include "ksub/oracles.hpp"
#include "ksub/validators.hpp"

namespace ksub {

/// Result of one inequality check, read as `lhs <= rhs + tolerance`.
struct CheckOutcome {
    bool holds = true;
    double lhs = 0.0;
    double rhs = 0.0;
};

/// f(S') - f(S) <= Σ_{(a,i) ∈ S' \ S} Δ_{a,i}(S), for S ⊆ S'.
template <ValueOracle O>
CheckOutcome check_lemma1(const O &oracle, const Assignment &s, const Assignment &s_prime, EvalCounter &counter) {
    if (!precedes(s, s_prime))
        throw PreconditionViolated(to_string(s) + " is not a subset of " + to_string(s_prime));
    double base = evaluate(oracle, s, counter);
    double lhs = evaluate(oracle, s_prime, counter) - base;
    double rhs = 0.0;
    for (const auto &p : s_prime)
        if (!s.contains(p))
            rhs += marginal_gain(oracle, s, p.item, p.dim, counter);
    return {lhs <= rhs + kTolerance, lhs, rhs};
}

template <ValueOracle O>
CheckOutcome check_lemma1(const O &oracle, const Assignment &s, const Assignment &s_prime) {
    EvalCounter local;
    return check_lemma1(oracle, s, s_prime, local);
}

/// P, D positive integers and P nonnegative reals with ρ_1 > 0.
struct WolseyInput {
    int P = 1;
    int D = 1;
    std::vector<double> rho;
};

struct WolseyOutcome {
    bool holds = true;
    double ratio = 0.0;  // Σρ_i / min_t (Σ_{i<t} ρ_i + D ρ_t)
    double middle = 0.0; // 1 - (1 - 1/D)^P
    double lower = 0.0;  // 1 - e^{-P/D}
};

/// Checks ratio >= 1 - (1-1/D)^P >= 1 - e^{-P/D}, each step with slack ε.
inline WolseyOutcome check_wolsey(const WolseyInput &in) {
    if (in.P < 1 || in.D < 1)
        throw MalformedInput("Wolsey input needs positive integers P and D");
    if (static_cast<int>(in.rho.size()) != in.P)
        throw MalformedInput("Wolsey input needs exactly P = " + std::to_string(in.P) + " values, got " +
                             std::to_string(in.rho.size()));
    for (double r : in.rho)
        if (!(r >= 0.0))
            throw MalformedInput("Wolsey input values must be nonnegative");

    double prefix = 0.0;
    double denom = 0.0;
    for (int t = 0; t < in.P; ++t) {
        double term = prefix + in.D * in.rho[static_cast<std::size_t>(t)];
        if (t == 0 || term < denom)
            denom = term;
        prefix += in.rho[static_cast<std::size_t>(t)];
    }
    if (!(denom > 0.0))
        throw DegenerateInput("Wolsey denominator min_t(Σ_{i<t} ρ_i + D ρ_t) is zero; ρ_1 must be positive");

    WolseyOutcome out;
    out.ratio = prefix / denom;
    out.middle = 1.0 - std::pow(1.0 - 1.0 / in.D, in.P);
    out.lower = 1.0 - std::exp(-static_cast<double>(in.P) / in.D);
    out.holds = out.ratio >= out.middle - kTolerance && out.middle >= out.lower - kTolerance;
    return out;
}

/// Orders T's pairs so each prefix T^t maximizes f(T^{t-1} ∪ {(a,i)}) over
/// the pairs not yet taken; ties keep the canonically smaller pair.
template <ValueOracle O>
std::vector<Pair> greedy_reorder(const O &oracle, const Assignment &t, EvalCounter &counter) {
    std::vector<Pair> remaining(t.begin(), t.end());
    std::vector<Pair> order;
    if (remaining.size() <= 1)
        return remaining;
    Assignment prefix;
    while (!remaining.empty()) {
        std::size_t best = 0;
        double best_value = 0.0;
        for (std::size_t idx = 0; idx < remaining.size(); ++idx) {
            double v = evaluate(oracle, prefix.with(remaining[idx]), counter);
            if (idx == 0 || v > best_value) {
                best = idx;
                best_value = v;
            }
        }
        prefix = prefix.with(remaining[best]);
        order.push_back(remaining[best]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return order;
}

/// True iff every prefix of `order` is a maximizer over the remaining pairs.
template <ValueOracle O>
bool is_greedy_order(const O &oracle, const std::vector<Pair> &order, EvalCounter &counter) {
    Assignment prefix;
    for (std::size_t t = 0; t < order.size(); ++t) {
        double chosen = evaluate(oracle, prefix.with(order[t]), counter);
        for (std::size_t r = t + 1; r < order.size(); ++r)
            if (evaluate(oracle, prefix.with(order[r]), counter) > chosen + kTolerance)
                return false;
        prefix = prefix.with(order[t]);
    }
    return true;
}

/// A greedily reordered T (|T| >= 4), an index j >= 4 into it (1-based),
/// and Z over items other than a_1, a_2, a_3, a_j. Y is the first three
/// pairs of the order.
struct Eq2Scenario {
    std::vector<Pair> order;
    int j = 4;
    Assignment z;

    Assignment y() const {
        return Assignment(std::vector<Pair>(order.begin(), order.begin() + std::min<std::ptrdiff_t>(3, std::ssize(order))));
    }
    Pair pj() const { return order.at(static_cast<std::size_t>(j - 1)); }
};

/// f(Y ∪ Z ∪ {(a_j, i_j)}) - f(Y ∪ Z) <= f(Y) / 3.
template <ValueOracle O>
CheckOutcome check_eq2(const O &oracle, const Eq2Scenario &sc, EvalCounter &counter) {
    if (sc.order.size() < 4)
        throw PreconditionViolated("scenario needs |T| >= 4");
    if (sc.j < 4 || sc.j > static_cast<int>(sc.order.size()))
        throw PreconditionViolated("scenario index j must lie in [4, |T|]");
    Assignment y = sc.y();
    Pair pj = sc.pj();
    for (const auto &p : sc.z)
        if (y.contains_item(p.item) || p.item == pj.item)
            throw PreconditionViolated("Z assigns item " + std::to_string(p.item.value) +
                                       ", which is reserved for Y or (a_j, i_j)");
    Assignment yz = y.merged(sc.z);
    double lhs = evaluate(oracle, yz.with(pj), counter) - evaluate(oracle, yz, counter);
    double rhs = evaluate(oracle, y, counter) / 3.0;
    return {lhs <= rhs + kTolerance, lhs, rhs};
}

} // namespace ksub

#endif // KSUB_PROPERTIES_HPP_
