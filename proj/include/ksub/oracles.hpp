#ifndef KSUB_ORACLES_HPP_
#define KSUB_ORACLES_HPP_

#include <bit>
#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "ksub/core.hpp"

namespace ksub {

/// Anything that maps assignments over [1..items()] x [1..dims()] to reals.
/// Algorithms only reach value() through evaluate(), which does the counting.
template <class F>
concept ValueOracle = requires(const F &f, const Assignment &s) {
    { f.items() } -> std::convertible_to<int>;
    { f.dims() } -> std::convertible_to<int>;
    { f.value(s) } -> std::convertible_to<double>;
};

/// f(S) = weight of the union of covers(a, i) over (a, i) ∈ S.
struct CoveragePayload {
    struct Element {
        std::string id;
        double weight = 0.0;
    };
    struct Cover {
        ItemId item;
        Dimension dim;
        std::vector<std::string> elements;
    };
    std::vector<Element> elements;
    std::vector<Cover> covers;
};

class CoverageOracle {
public:
    CoverageOracle(int n, int k, CoveragePayload payload) : n_(n), k_(k), payload_(std::move(payload)) {
        if (n < 0 || k < 1)
            throw MalformedInput("coverage oracle needs n >= 0 and k >= 1");
        std::unordered_map<std::string, std::size_t> index;
        for (const auto &e : payload_.elements) {
            if (!(e.weight >= 0.0))
                throw MalformedInput("element '" + e.id + "' has a negative weight");
            if (!index.emplace(e.id, weights_.size()).second)
                throw MalformedInput("element '" + e.id + "' is listed twice");
            weights_.push_back(e.weight);
        }
        words_ = (weights_.size() + 63) / 64;
        masks_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(k) * words_, 0);
        for (const auto &c : payload_.covers) {
            if (c.item.value < 1 || c.item.value > n || c.dim.value < 1 || c.dim.value > k)
                throw MalformedInput("cover for (" + std::to_string(c.item.value) + "," +
                                     std::to_string(c.dim.value) + ") is outside n=" + std::to_string(n) +
                                     ", k=" + std::to_string(k));
            std::uint64_t *mask = mask_of(c.item, c.dim);
            for (const auto &id : c.elements) {
                auto it = index.find(id);
                if (it == index.end())
                    throw MalformedInput("cover references unknown element '" + id + "'");
                mask[it->second / 64] |= std::uint64_t{1} << (it->second % 64);
            }
        }
        for (double w : weights_)
            total_weight_ += w;
    }

    int items() const noexcept { return n_; }
    int dims() const noexcept { return k_; }
    const CoveragePayload &payload() const noexcept { return payload_; }
    double total_weight() const noexcept { return total_weight_; }

    double value(const Assignment &s) const {
        if (words_ == 1) {
            std::uint64_t acc = 0;
            for (const auto &p : s)
                acc |= *mask_of(p.item, p.dim);
            return weigh(&acc, 1);
        }
        std::vector<std::uint64_t> acc(words_, 0);
        for (const auto &p : s) {
            const std::uint64_t *mask = mask_of(p.item, p.dim);
            for (std::size_t w = 0; w < words_; ++w)
                acc[w] |= mask[w];
        }
        return weigh(acc.data(), words_);
    }

private:
    std::uint64_t *mask_of(ItemId a, Dimension i) {
        return masks_.data() + (static_cast<std::size_t>(a.value - 1) * static_cast<std::size_t>(k_) +
                                static_cast<std::size_t>(i.value - 1)) *
                                   words_;
    }
    const std::uint64_t *mask_of(ItemId a, Dimension i) const {
        return masks_.data() + (static_cast<std::size_t>(a.value - 1) * static_cast<std::size_t>(k_) +
                                static_cast<std::size_t>(i.value - 1)) *
                                   words_;
    }

    // Sums in element-index order so the result does not depend on S's order.
    double weigh(const std::uint64_t *bits, std::size_t words) const {
        double total = 0.0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t b = bits[w];
            while (b != 0) {
                auto bit = static_cast<std::size_t>(std::countr_zero(b));
                total += weights_[w * 64 + bit];
                b &= b - 1;
            }
        }
        return total;
    }

    int n_;
    int k_;
    CoveragePayload payload_;
    std::vector<double> weights_;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> masks_;
    double total_weight_ = 0.0;
};

/// f(S) = Σ_i min(cap_i, Σ_{a ∈ X_i} m_i(a)).
struct SeparableSumPayload {
    struct Term {
        double cap = 0.0;
        std::vector<double> masses; // indexed by item - 1
    };
    std::vector<Term> dims;
};

class SeparableSumOracle {
public:
    SeparableSumOracle(int n, int k, SeparableSumPayload payload) : n_(n), k_(k), payload_(std::move(payload)) {
        if (n < 0 || k < 1)
            throw MalformedInput("separable-sum oracle needs n >= 0 and k >= 1");
        if (static_cast<int>(payload_.dims.size()) != k)
            throw MalformedInput("separable-sum oracle needs one term per dimension (" + std::to_string(k) +
                                 "), got " + std::to_string(payload_.dims.size()));
        for (std::size_t i = 0; i < payload_.dims.size(); ++i) {
            const auto &t = payload_.dims[i];
            if (!(t.cap >= 0.0))
                throw MalformedInput("dimension " + std::to_string(i + 1) + " has a negative cap");
            if (static_cast<int>(t.masses.size()) != n)
                throw MalformedInput("dimension " + std::to_string(i + 1) + " needs " + std::to_string(n) +
                                     " masses, got " + std::to_string(t.masses.size()));
            for (double m : t.masses)
                if (!(m >= 0.0))
                    throw MalformedInput("dimension " + std::to_string(i + 1) + " has a negative mass");
        }
    }

    int items() const noexcept { return n_; }
    int dims() const noexcept { return k_; }
    const SeparableSumPayload &payload() const noexcept { return payload_; }

    double value(const Assignment &s) const {
        std::vector<double> load(static_cast<std::size_t>(k_), 0.0);
        for (const auto &p : s) {
            auto i = static_cast<std::size_t>(p.dim.value - 1);
            load[i] += payload_.dims[i].masses[static_cast<std::size_t>(p.item.value - 1)];
        }
        double total = 0.0;
        for (std::size_t i = 0; i < load.size(); ++i)
            total += std::min(payload_.dims[i].cap, load[i]);
        return total;
    }

private:
    int n_;
    int k_;
    SeparableSumPayload payload_;
};

/// Explicit value table over all (k+1)^n assignments, indexed by
/// StateSpace code. The table is shifted so f(∅) = 0; the removed shift is
/// kept in offset().
class TabularOracle {
public:
    TabularOracle(int n, int k, std::vector<double> values) : space_(n, k), values_(std::move(values)) {
        auto size = space_.size();
        if (!size || values_.size() != *size)
            throw MalformedInput("tabular oracle for n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                                 " needs a complete table");
        offset_ = values_.empty() ? 0.0 : values_[0];
        if (offset_ != 0.0)
            for (double &v : values_)
                v -= offset_;
    }

    int items() const noexcept { return space_.n(); }
    int dims() const noexcept { return space_.k(); }
    double offset() const noexcept { return offset_; }
    const StateSpace &space() const noexcept { return space_; }
    const std::vector<double> &values() const noexcept { return values_; }

    double value(const Assignment &s) const { return values_[space_.encode(s)]; }

private:
    StateSpace space_;
    std::vector<double> values_;
    double offset_ = 0.0;
};

/// Wraps a callable; for tests and ad hoc functions that have no file form.
class FunctionOracle {
public:
    FunctionOracle(int n, int k, std::function<double(const Assignment &)> f) : n_(n), k_(k), f_(std::move(f)) {}

    int items() const noexcept { return n_; }
    int dims() const noexcept { return k_; }
    double value(const Assignment &s) const { return f_(s); }

private:
    int n_;
    int k_;
    std::function<double(const Assignment &)> f_;
};

/// One of the serializable oracle families.
class Oracle {
public:
    using Variant = std::variant<CoverageOracle, SeparableSumOracle, TabularOracle>;

    Oracle(CoverageOracle o) : impl_(std::move(o)) {}
    Oracle(SeparableSumOracle o) : impl_(std::move(o)) {}
    Oracle(TabularOracle o) : impl_(std::move(o)) {}

    int items() const {
        return std::visit([](const auto &o) { return o.items(); }, impl_);
    }
    int dims() const {
        return std::visit([](const auto &o) { return o.dims(); }, impl_);
    }
    double value(const Assignment &s) const {
        return std::visit([&](const auto &o) { return o.value(s); }, impl_);
    }

    std::string_view family() const {
        switch (impl_.index()) {
        case 0:
            return "coverage";
        case 1:
            return "separable_sum";
        default:
            return "tabular";
        }
    }

    const Variant &variant() const noexcept { return impl_; }

private:
    Variant impl_;
};

/// f(S), counted once. S must stay within the oracle's items and dimensions.
template <ValueOracle O>
double evaluate(const O &oracle, const Assignment &s, EvalCounter &counter) {
    if (s.max_item() > oracle.items() || s.max_dim() > oracle.dims())
        throw MalformedInput("assignment " + to_string(s) + " is outside n=" + std::to_string(oracle.items()) +
                             ", k=" + std::to_string(oracle.dims()));
    counter.tick();
    return oracle.value(s);
}

/// Δ_{a,i}(S) = f(S ∪ {(a,i)}) - f(S). Two counted evaluations.
template <ValueOracle O>
double marginal_gain(const O &oracle, const Assignment &s, ItemId a, Dimension i, EvalCounter &counter) {
    if (s.contains_item(a))
        throw PreconditionViolated("item " + std::to_string(a.value) + " is already in " + to_string(s));
    Assignment extended = s.with({a, i});
    double after = evaluate(oracle, extended, counter);
    double before = evaluate(oracle, s, counter);
    return after - before;
}

/// Every value of f over (k+1)^n, indexed by StateSpace code.
template <ValueOracle O>
std::vector<double> tabulate(const O &oracle, const StateSpace &space, EvalCounter &counter) {
    auto size = space.require_within(~std::uint64_t{0} >> 1);
    std::vector<double> table(size);
    for (std::uint64_t code = 0; code < size; ++code)
        table[code] = evaluate(oracle, space.decode(code), counter);
    return table;
}

} // namespace ksub

#endif // KSUB_ORACLES_HPP_
