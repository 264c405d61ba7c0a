// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "ksub/bench.hpp"
#include "ksub/io.hpp"
#include "ksub/ksub.hpp"
#include "ksub/trials.hpp"

namespace {

using namespace ksub;

int failures = 0;

void report(int id, bool ok, const std::string &what) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

BenchOptions suite_options(std::uint64_t seed) {
    BenchOptions opt;
    opt.seed = seed;
    opt.count = 240;
    opt.n_min = 4;
    opt.n_max = 8;
    opt.k_min = 2;
    opt.k_max = 3;
    opt.cost_max = 10;
    opt.budget_fractions = {0.3, 0.5, 0.8};
    return opt;
}

void knapsack_ratio() {
    const double factor = 0.5 * (1.0 - std::exp(-1.0));
    auto opt = suite_options(20240601);
    auto start = std::chrono::steady_clock::now();
    auto rows = run_bench(opt);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = seconds < 120.0;
    double worst = 1.0;
    int coverage = 0, separable = 0;
    for (std::uint64_t i = 0; i < rows.size(); ++i) {
        const auto &r = rows[i].row.report;
        ok = ok && r.value >= factor * *r.optimum - 1e-9;
        if (r.ratio)
            worst = std::min(worst, *r.ratio);
        (i % 2 == 0 ? coverage : separable)++;
    }
    ok = ok && coverage >= 1 && separable >= 1;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "knapsack greedy >= %.4f OPT on %zu instances (%d coverage, %d separable); worst ratio %.4f; %.1fs",
                  factor, rows.size(), coverage, separable, worst, seconds);
    report(1, ok, buf);
}

void unconstrained_ratio() {
    auto opt = suite_options(20240601);
    bool ok = true;
    double worst = 1.0;
    for (std::uint64_t i = 0; i < opt.count; ++i) {
        Problem p = bench_instance(opt, i);
        Instance all = p.instance.with_budget(p.instance.total_cost());
        EvalCounter c1, c2;
        double g = unconstrained_greedy(p.oracle, all.n(), all.k(), c1).value;
        double best = exact_bruteforce(p.oracle, all, c2).value;
        ok = ok && g >= 0.5 * best - 1e-9;
        ok = ok && c1.count == 2u * static_cast<std::uint64_t>(all.n() * all.k());
        if (best > 0)
            worst = std::min(worst, g / best);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "unconstrained greedy >= 0.5 OPT with B = total cost on %llu instances; worst %.4f",
                  static_cast<unsigned long long>(opt.count), worst);
    report(2, ok, buf);
}

void small_optima_recovered() {
    // Small budgets make optima with at most two pairs common.
    BenchOptions opt = suite_options(77);
    opt.budget_fractions = {0.1, 0.15, 0.3};
    opt.count = 300;
    auto rows = run_bench(opt);
    bool ok = true;
    int small = 0;
    for (const auto &r : rows)
        if (r.optimum_size <= 2) {
            ++small;
            ok = ok && r.row.report.value == *r.row.report.optimum;
        }
    ok = ok && small >= 50;
    report(3, ok, "greedy equals OPT exactly on all " + std::to_string(small) + " instances whose optimum has <= 2 pairs");
}

void evaluation_bound() {
    bool ok = true;
    for (int n = 1; n <= 60; ++n)
        for (int k = 1; k <= 20; ++k) {
            long double ceiling = 2.0L * std::pow(static_cast<long double>(n), 5) * std::pow(static_cast<long double>(k), 4);
            ok = ok && static_cast<long double>(count_bound(n, k)) <= ceiling;
        }
    auto rows = run_bench(suite_options(5150));
    std::uint64_t max_eval = 0;
    for (const auto &r : rows) {
        ok = ok && r.row.report.evaluations <= r.bound;
        max_eval = std::max(max_eval, r.row.report.evaluations);
    }
    // With B equal to the total cost every branch is explored and the bound is met.
    Rng rng(9);
    for (int n = 4; n <= 7; ++n) {
        Problem p = generate_problem(rng, n, 2, Family::coverage, 10, 1.0, "tight");
        EvalCounter c;
        knapsack_greedy(p.oracle, p.instance, c);
        ok = ok && c.count == count_bound(n, 2);
    }
    report(4, ok,
           "evaluations <= count_bound on 240 instances (max " + std::to_string(max_eval) +
               "), count_bound <= 2 n^5 k^4 for n <= 60, k <= 20, tight at B = total cost");
}

void lemma1() {
    auto s = lemma1_trials(11, 10000);
    auto bad = lemma1_trials(read_problem(std::string(KSUB_FIXTURE_DIR) + "/supermodular.json").oracle, 11, 1000);
    bool ok = s.all_passed() && s.trials == 10000 && !bad.all_passed();
    report(5, ok,
           std::to_string(s.passed) + "/" + std::to_string(s.trials) +
               " marginal-sum trials hold; supermodular fixture detected: " + (bad.all_passed() ? "no" : "yes"));
}

void wolsey() {
    auto s = wolsey_trials(12, 10000);
    report(6, s.all_passed() && s.trials == 10000,
           std::to_string(s.passed) + "/" + std::to_string(s.trials) + " ratio-bound trials hold");
}

void eq2() {
    auto s = eq2_trials(13, 1000, Eq2Population::optimal);
    report(7, s.all_passed() && s.trials == 1000,
           std::to_string(s.passed) + "/" + std::to_string(s.trials) + " gain-split scenarios from optima hold (" +
               std::to_string(s.skipped) + " draws skipped)");
}

void validators_agree() {
    Rng rng(14);
    bool ok = true;
    int total = 0, rejected = 0;
    for (int t = 0; t < 90; ++t) {
        int n = 1 + t % 4;
        int k = 1 + (t / 4) % 3;
        TabularOracle f(n, k, random_monotone_table(rng, n, k, static_cast<TableStyle>(t % 3)));
        bool orthant = validate_orthant_submodular(f, n, k).passed;
        bool lattice = validate_lattice_ksubmodular(f, n, k).passed;
        ok = ok && orthant == lattice;
        rejected += orthant ? 0 : 1;
        ++total;
    }
    TabularOracle counter(2, 1, {0.0, 1.0, 1.0, 3.0});
    bool both_reject = !validate_orthant_submodular(counter, 2, 1).passed &&
                       !validate_lattice_ksubmodular(counter, 2, 1).passed;
    ok = ok && both_reject && total >= 50;
    report(8, ok,
           "orthant and lattice validators agree on " + std::to_string(total) + " monotone tables (" +
               std::to_string(rejected) + " rejected); both reject the supermodular counterexample");
}

void bench_deterministic() {
    BenchOptions opt = suite_options(31337);
    opt.count = 60;
    std::string first = bench_csv(run_bench(opt));
    std::string second = bench_csv(run_bench(opt));
    opt.jobs = 4;
    std::string threaded = bench_csv(run_bench(opt));
    report(9, first == second && first == threaded, "bench CSV byte-identical across repeats and --jobs 1 vs 4");
}

} // namespace

int main() {
    try {
        knapsack_ratio();
        unconstrained_ratio();
        small_optima_recovered();
        evaluation_bound();
        lemma1();
        wolsey();
        eq2();
        validators_agree();
        bench_deterministic();
    } catch (const std::exception &e) {
        std::printf("FAIL acceptance aborted: %s\n", e.what());
        return 1;
    }
    return failures == 0 ? 0 : 1;
}
