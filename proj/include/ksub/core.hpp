#ifndef KSUB_CORE_HPP_
#define KSUB_CORE_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ksub/error.hpp"

namespace ksub {

/// An element of the ground set V = {1, ..., n}.
struct ItemId {
    int value = 0;
    friend constexpr auto operator<=>(ItemId, ItemId) = default;
};

/// One of the k dimensions, 1-based.
struct Dimension {
    int value = 0;
    friend constexpr auto operator<=>(Dimension, Dimension) = default;
};

/// An item placed in a dimension.
struct Pair {
    ItemId item;
    Dimension dim;
    friend constexpr auto operator<=>(const Pair &, const Pair &) = default;
};

/// A k-disjoint tuple (X_1, ..., X_k) stored as a set of item-dimension pairs
/// with distinct items. Pairs are kept sorted by item, which is also the
/// canonical (item, dimension) order since items are unique. Comparison is
/// lexicographic over that sequence.
class Assignment {
public:
    Assignment() = default;

    Assignment(std::initializer_list<Pair> pairs) : Assignment(std::vector<Pair>(pairs)) {}

    explicit Assignment(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
        std::sort(pairs_.begin(), pairs_.end());
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (pairs_[i].item.value < 1)
                throw MalformedInput("item id " + std::to_string(pairs_[i].item.value) + " is not positive");
            if (pairs_[i].dim.value < 1)
                throw MalformedInput("dimension " + std::to_string(pairs_[i].dim.value) + " is not positive");
            if (i > 0 && pairs_[i - 1].item == pairs_[i].item)
                throw MalformedInput("item " + std::to_string(pairs_[i].item.value) +
                                     " is assigned to more than one dimension");
        }
    }

    std::size_t size() const noexcept { return pairs_.size(); }
    bool empty() const noexcept { return pairs_.empty(); }
    auto begin() const noexcept { return pairs_.begin(); }
    auto end() const noexcept { return pairs_.end(); }
    std::span<const Pair> pairs() const noexcept { return pairs_; }

    std::optional<Dimension> dimension_of(ItemId a) const {
        auto it = find(a);
        if (it == pairs_.end())
            return std::nullopt;
        return it->dim;
    }

    bool contains_item(ItemId a) const { return find(a) != pairs_.end(); }

    bool contains(Pair p) const {
        auto it = find(p.item);
        return it != pairs_.end() && it->dim == p.dim;
    }

    /// U(S): the items that carry some dimension, ascending.
    std::vector<ItemId> support() const {
        std::vector<ItemId> out;
        out.reserve(pairs_.size());
        for (const auto &p : pairs_)
            out.push_back(p.item);
        return out;
    }

    /// S ∪ {(a, i)}; the item must not already be assigned.
    Assignment with(Pair p) const {
        auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p.item,
                                   [](const Pair &q, ItemId a) { return q.item < a; });
        if (it != pairs_.end() && it->item == p.item)
            throw PreconditionViolated("item " + std::to_string(p.item.value) + " is already assigned");
        if (p.item.value < 1 || p.dim.value < 1)
            throw MalformedInput("pair has a non-positive item or dimension");
        Assignment out;
        out.pairs_.reserve(pairs_.size() + 1);
        out.pairs_.insert(out.pairs_.end(), pairs_.begin(), it);
        out.pairs_.push_back(p);
        out.pairs_.insert(out.pairs_.end(), it, pairs_.end());
        return out;
    }

    /// Union of two assignments over disjoint item sets.
    Assignment merged(const Assignment &other) const {
        std::vector<Pair> all(pairs_);
        all.insert(all.end(), other.pairs_.begin(), other.pairs_.end());
        return Assignment(std::move(all));
    }

    int max_item() const noexcept { return pairs_.empty() ? 0 : pairs_.back().item.value; }

    int max_dim() const noexcept {
        int m = 0;
        for (const auto &p : pairs_)
            m = std::max(m, p.dim.value);
        return m;
    }

    friend bool operator==(const Assignment &, const Assignment &) = default;
    friend auto operator<=>(const Assignment &a, const Assignment &b) {
        return std::lexicographical_compare_three_way(a.pairs_.begin(), a.pairs_.end(), b.pairs_.begin(),
                                                      b.pairs_.end());
    }

private:
    std::vector<Pair>::const_iterator find(ItemId a) const {
        auto it = std::lower_bound(pairs_.begin(), pairs_.end(), a,
                                   [](const Pair &q, ItemId x) { return q.item < x; });
        if (it != pairs_.end() && it->item == a)
            return it;
        return pairs_.end();
    }

    std::vector<Pair> pairs_;
};

/// Renders as {(1,1),(2,2)}.
inline std::string to_string(const Assignment &s) {
    std::string out = "{";
    bool first = true;
    for (const auto &p : s) {
        if (!first)
            out += ',';
        first = false;
        out += '(' + std::to_string(p.item.value) + ',' + std::to_string(p.dim.value) + ')';
    }
    out += '}';
    return out;
}

inline std::ostream &operator<<(std::ostream &os, const Assignment &s) { return os << to_string(s); }

namespace detail {

inline void check_dims(const Assignment &x, int k) {
    for (const auto &p : x)
        if (p.dim.value > k)
            throw MalformedInput("dimension " + std::to_string(p.dim.value) + " exceeds k=" + std::to_string(k));
}

} // namespace detail

/// x ⊔ y: item a lands in dimension i iff some side puts it in i and
/// neither side puts it anywhere else.
inline Assignment join(const Assignment &x, const Assignment &y, int k) {
    detail::check_dims(x, k);
    detail::check_dims(y, k);
    std::vector<Pair> out;
    auto xi = x.begin();
    auto yi = y.begin();
    while (xi != x.end() || yi != y.end()) {
        if (yi == y.end() || (xi != x.end() && xi->item < yi->item)) {
            out.push_back(*xi++);
        } else if (xi == x.end() || yi->item < xi->item) {
            out.push_back(*yi++);
        } else {
            if (xi->dim == yi->dim)
                out.push_back(*xi);
            ++xi;
            ++yi;
        }
    }
    return Assignment(std::move(out));
}

/// x ⊓ y: coordinatewise intersection.
inline Assignment meet(const Assignment &x, const Assignment &y) {
    std::vector<Pair> out;
    for (const auto &p : x)
        if (y.contains(p))
            out.push_back(p);
    return Assignment(std::move(out));
}

/// x ⪯ y: every pair of x is a pair of y.
inline bool precedes(const Assignment &x, const Assignment &y) {
    return std::all_of(x.begin(), x.end(), [&](const Pair &p) { return y.contains(p); });
}

/// Ground set size, dimension count, and knapsack data. Costs are positive
/// integers indexed by item id; items costing more than the budget are
/// allowed and simply never fit.
class Instance {
public:
    Instance() = default;

    Instance(int k, std::vector<std::int64_t> costs, std::int64_t budget)
        : k_(k), costs_(std::move(costs)), budget_(budget) {
        if (k_ < 1)
            throw MalformedInput("k must be at least 1, got " + std::to_string(k_));
        if (budget_ < 1)
            throw MalformedInput("budget must be a positive integer, got " + std::to_string(budget_));
        for (std::size_t a = 0; a < costs_.size(); ++a)
            if (costs_[a] < 1)
                throw MalformedInput("cost of item " + std::to_string(a + 1) + " must be a positive integer, got " +
                                     std::to_string(costs_[a]));
    }

    int n() const noexcept { return static_cast<int>(costs_.size()); }
    int k() const noexcept { return k_; }
    std::int64_t budget() const noexcept { return budget_; }
    std::span<const std::int64_t> costs() const noexcept { return costs_; }

    std::int64_t cost_of(ItemId a) const {
        if (a.value < 1 || a.value > n())
            throw MalformedInput("unknown item " + std::to_string(a.value));
        return costs_[static_cast<std::size_t>(a.value - 1)];
    }

    std::int64_t total_cost() const noexcept {
        std::int64_t s = 0;
        for (auto c : costs_)
            s += c;
        return s;
    }

    /// Same items and costs with a different budget.
    Instance with_budget(std::int64_t budget) const { return Instance(k_, costs_, budget); }

private:
    int k_ = 1;
    std::vector<std::int64_t> costs_;
    std::int64_t budget_ = 1;
};

/// c(S) = Σ_{a ∈ U(S)} c_a.
inline std::int64_t cost(const Assignment &s, const Instance &inst) {
    std::int64_t total = 0;
    for (const auto &p : s)
        total += inst.cost_of(p.item);
    return total;
}

inline bool feasible(const Assignment &s, const Instance &inst) { return cost(s, inst) <= inst.budget(); }

/// Number of oracle evaluations. Counters are local to one task; totals
/// from independent tasks combine with merge().
struct EvalCounter {
    std::uint64_t count = 0;

    void tick() noexcept { ++count; }
    void merge(const EvalCounter &other) noexcept { count += other.count; }
};

enum class Algorithm { unconstrained_greedy, knapsack_greedy, exact };

inline std::string_view to_string(Algorithm a) {
    switch (a) {
    case Algorithm::unconstrained_greedy:
        return "unconstrained_greedy";
    case Algorithm::knapsack_greedy:
        return "knapsack_greedy";
    case Algorithm::exact:
        return "exact";
    }
    return "unknown";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
    std::string s(name);
    std::replace(s.begin(), s.end(), '-', '_');
    if (s == "unconstrained_greedy")
        return Algorithm::unconstrained_greedy;
    if (s == "knapsack_greedy")
        return Algorithm::knapsack_greedy;
    if (s == "exact")
        return Algorithm::exact;
    return std::nullopt;
}

struct SolveReport {
    Algorithm algorithm = Algorithm::exact;
    Assignment solution;
    double value = 0.0;
    std::uint64_t evaluations = 0;
    std::optional<double> optimum;
    std::optional<double> ratio;

    /// Records the optimum; the ratio is only defined for a positive optimum.
    void set_optimum(double opt) {
        optimum = opt;
        if (opt > 0.0)
            ratio = value / opt;
        else
            ratio.reset();
    }

    friend bool operator==(const SolveReport &, const SolveReport &) = default;
};

/// Mixed-radix encoding of (k+1)^V: item a contributes digit d_a ∈ {0..k}
/// (0 = unassigned) with weight (k+1)^(a-1). Code order is the canonical
/// enumeration order used by the exhaustive routines.
class StateSpace {
public:
    static constexpr std::uint64_t kDefaultCap = 1'000'000;

    StateSpace(int n, int k) : n_(n), k_(k) {
        if (n < 0 || k < 1)
            throw MalformedInput("state space needs n >= 0 and k >= 1");
        radix_.assign(static_cast<std::size_t>(n) + 1, 1);
        for (int a = 1; a <= n; ++a) {
            if (radix_[static_cast<std::size_t>(a - 1)] > kOverflowGuard / static_cast<std::uint64_t>(k + 1)) {
                overflow_ = true;
                break;
            }
            radix_[static_cast<std::size_t>(a)] = radix_[static_cast<std::size_t>(a - 1)] * static_cast<std::uint64_t>(k + 1);
        }
    }

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }

    /// (k+1)^n, or nullopt when it does not fit comfortably in 64 bits.
    std::optional<std::uint64_t> size() const noexcept {
        if (overflow_)
            return std::nullopt;
        return radix_.back();
    }

    /// Throws SizeLimitExceeded unless (k+1)^n <= cap.
    std::uint64_t require_within(std::uint64_t cap) const {
        auto s = size();
        if (!s || *s > cap)
            throw SizeLimitExceeded("(k+1)^n for n=" + std::to_string(n_) + ", k=" + std::to_string(k_) +
                                    " exceeds the enumeration cap of " + std::to_string(cap));
        return *s;
    }

    std::uint64_t weight(ItemId a) const { return radix_[static_cast<std::size_t>(a.value - 1)]; }

    std::uint64_t encode(const Assignment &s) const {
        std::uint64_t code = 0;
        for (const auto &p : s) {
            if (p.item.value > n_ || p.dim.value > k_)
                throw MalformedInput("pair (" + std::to_string(p.item.value) + "," + std::to_string(p.dim.value) +
                                     ") is outside n=" + std::to_string(n_) + ", k=" + std::to_string(k_));
            code += static_cast<std::uint64_t>(p.dim.value) * weight(p.item);
        }
        return code;
    }

    Assignment decode(std::uint64_t code) const {
        std::vector<Pair> pairs;
        for (int a = 1; a <= n_ && code != 0; ++a) {
            auto d = static_cast<int>(code % static_cast<std::uint64_t>(k_ + 1));
            code /= static_cast<std::uint64_t>(k_ + 1);
            if (d != 0)
                pairs.push_back({ItemId{a}, Dimension{d}});
        }
        return Assignment(std::move(pairs));
    }

    /// Digit of item a in code (0 when unassigned).
    int digit(std::uint64_t code, ItemId a) const {
        return static_cast<int>((code / weight(a)) % static_cast<std::uint64_t>(k_ + 1));
    }

private:
    static constexpr std::uint64_t kOverflowGuard = std::uint64_t{1} << 62;

    int n_;
    int k_;
    bool overflow_ = false;
    std::vector<std::uint64_t> radix_;
};

} // namespace ksub

#endif // KSUB_CORE_HPP_
