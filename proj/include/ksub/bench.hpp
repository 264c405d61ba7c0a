#ifndef KSUB_BENCH_HPP_
#define KSUB_BENCH_HPP_

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ksub/algorithms.hpp"
#include "ksub/generate.hpp"
#include "ksub/io.hpp"

namespace ksub {

struct BenchOptions {
    std::uint64_t seed = 0;
    std::uint64_t count = 200;
    int n_min = 4;
    int n_max = 8;
    int k_min = 2;
    int k_max = 3;
    /// Empty means alternate coverage and separable-sum by instance index.
    std::optional<Family> family;
    std::int64_t cost_max = 10;
    std::vector<double> budget_fractions{0.3, 0.5, 0.8};
    unsigned jobs = 1;
    bool timing = false;
    std::uint64_t cap = StateSpace::kDefaultCap;
};

struct BenchRow {
    ReportRow row;
    std::uint64_t bound = 0; // count_bound(n, k)
    std::size_t optimum_size = 0;
};

struct BenchSummary {
    double min_ratio = 1.0;
    double mean_ratio = 1.0;
    std::uint64_t max_evaluations = 0;
    std::uint64_t max_bound = 0;
    bool within_bound = true;
};

/// The instance with index `index` of a bench run. Each index has its own
/// seed sequence, so instances do not depend on how the run is scheduled.
inline Problem bench_instance(const BenchOptions &opt, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    Rng rng(seq);
    int n = detail::uniform_int(rng, opt.n_min, opt.n_max);
    int k = detail::uniform_int(rng, opt.k_min, opt.k_max);
    Family fam = opt.family ? *opt.family : (index % 2 == 0 ? Family::coverage : Family::separable_sum);
    double frac = opt.budget_fractions[index % opt.budget_fractions.size()];
    char name[32];
    std::snprintf(name, sizeof name, "bench-%05llu", static_cast<unsigned long long>(index));
    return generate_problem(rng, n, k, fam, opt.cost_max, frac, name);
}

inline void validate(const BenchOptions &opt) {
    if (opt.count < 1)
        throw MalformedInput("count must be at least 1");
    if (opt.n_min < 1 || opt.n_min > opt.n_max)
        throw MalformedInput("n range must satisfy 1 <= n-min <= n-max");
    if (opt.k_min < 1 || opt.k_min > opt.k_max)
        throw MalformedInput("k range must satisfy 1 <= k-min <= k-max");
    if (opt.budget_fractions.empty())
        throw MalformedInput("at least one budget fraction is required");
    StateSpace(opt.n_max, opt.k_max).require_within(opt.cap);
}

/// Runs knapsack_greedy and exact_bruteforce on each instance. Rows come
/// back in instance order whatever the job count.
inline std::vector<BenchRow> run_bench(const BenchOptions &opt) {
    validate(opt);
    std::vector<BenchRow> rows(opt.count);
    auto run_one = [&](std::uint64_t index) {
        Problem p = bench_instance(opt, index);
        auto start = std::chrono::steady_clock::now();
        EvalCounter greedy_counter;
        SolveReport report = knapsack_greedy(p.oracle, p.instance, greedy_counter);
        auto stop = std::chrono::steady_clock::now();
        EvalCounter exact_counter;
        SolveReport opt_report = exact_bruteforce(p.oracle, p.instance, exact_counter, opt.cap);
        report.set_optimum(opt_report.value);

        BenchRow &out = rows[index];
        out.row = {p.name, std::move(report), p.instance.n(), p.instance.k(), p.instance.budget(), std::nullopt};
        if (opt.timing)
            out.row.millis = std::chrono::duration<double, std::milli>(stop - start).count();
        out.bound = count_bound(p.instance.n(), p.instance.k());
        out.optimum_size = opt_report.solution.size();
    };

    unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(opt.count)));
    if (jobs == 1) {
        for (std::uint64_t i = 0; i < opt.count; ++i)
            run_one(i);
        return rows;
    }
    std::vector<std::thread> workers;
    std::mutex failure_mutex;
    std::exception_ptr failure;
    for (unsigned w = 0; w < jobs; ++w)
        workers.emplace_back([&, w] {
            try {
                for (std::uint64_t i = w; i < opt.count; i += jobs)
                    run_one(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        });
    for (auto &t : workers)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
    return rows;
}

inline BenchSummary summarize(const std::vector<BenchRow> &rows) {
    BenchSummary s;
    double total = 0.0;
    std::size_t with_ratio = 0;
    for (const auto &r : rows) {
        const auto &rep = r.row.report;
        if (rep.ratio) {
            s.min_ratio = with_ratio == 0 ? *rep.ratio : std::min(s.min_ratio, *rep.ratio);
            total += *rep.ratio;
            ++with_ratio;
        }
        s.max_evaluations = std::max(s.max_evaluations, rep.evaluations);
        s.max_bound = std::max(s.max_bound, r.bound);
        if (rep.evaluations > r.bound)
            s.within_bound = false;
    }
    if (with_ratio > 0)
        s.mean_ratio = total / static_cast<double>(with_ratio);
    return s;
}

inline std::string bench_csv(const std::vector<BenchRow> &rows) {
    std::vector<ReportRow> plain;
    plain.reserve(rows.size());
    for (const auto &r : rows)
        plain.push_back(r.row);
    return to_csv(plain);
}

} // namespace ksub

#endif // KSUB_BENCH_HPP_
