#ifndef KSUB_APP_HPP_
#define KSUB_APP_HPP_

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ksub/algorithms.hpp"
#include "ksub/bench.hpp"
#include "ksub/generate.hpp"
#include "ksub/io.hpp"
#include "ksub/trials.hpp"
#include "ksub/validators.hpp"

/// Command implementations behind the `ksub` executable. Each returns the
/// process exit code and writes machine-readable output to `out` and
/// diagnostics to `err`.
namespace ksub::app {

enum ExitCode : int {
    kSuccess = 0,
    kCheckFailed = 1,
    kInputError = 2,
    kCapExceeded = 3,
};

/// The (k+1)^n enumeration cap: 10^6 unless KSUB_EVAL_CAP overrides it.
/// Raising it is unsafe: runs may take hours or exhaust memory.
inline std::uint64_t enumeration_cap() {
    const char *raw = std::getenv("KSUB_EVAL_CAP");
    if (raw == nullptr || *raw == '\0')
        return StateSpace::kDefaultCap;
    char *end = nullptr;
    unsigned long long v = std::strtoull(raw, &end, 10);
    if (*end != '\0' || v == 0)
        throw MalformedInput(std::string("KSUB_EVAL_CAP must be a positive integer, got \"") + raw + "\"");
    return v;
}

inline ValidationLimits validation_limits() {
    ValidationLimits limits;
    limits.max_states = enumeration_cap();
    if (limits.max_states != StateSpace::kDefaultCap)
        limits.max_lattice_pairs = limits.max_states * (limits.max_states + 1) / 2;
    return limits;
}

/// Runs `body`, mapping library errors onto exit codes.
template <class Body>
int guarded(std::ostream &err, Body &&body) {
    try {
        return body();
    } catch (const SizeLimitExceeded &e) {
        err << "error: " << e.what() << '\n';
        return kCapExceeded;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const Json::exception &e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

inline void emit(const std::optional<std::filesystem::path> &path, const std::string &text, std::ostream &out) {
    if (path)
        write_text(*path, text);
    else
        out << text;
}

struct SolveCommand {
    std::filesystem::path instance;
    std::string algorithm = "knapsack_greedy";
    bool with_opt = false;
    bool timing = false;
    std::optional<std::filesystem::path> output; // JSON report, stdout when absent
    std::optional<std::filesystem::path> csv;
};

inline Json report_json(const Problem &p, const SolveReport &r) {
    Json j = to_json(r);
    j["instance"] = p.name;
    j["n"] = p.instance.n();
    j["k"] = p.instance.k();
    j["budget"] = p.instance.budget();
    if (p.oracle_offset() != 0.0)
        j["oracle_offset"] = p.oracle_offset();
    return j;
}

inline SolveReport run_algorithm(Algorithm algo, const Problem &p, std::uint64_t cap) {
    EvalCounter counter;
    switch (algo) {
    case Algorithm::unconstrained_greedy:
        return unconstrained_greedy(p.oracle, p.instance.n(), p.instance.k(), counter);
    case Algorithm::knapsack_greedy:
        return knapsack_greedy(p.oracle, p.instance, counter);
    case Algorithm::exact:
        return exact_bruteforce(p.oracle, p.instance, counter, cap);
    }
    throw MalformedInput("unknown algorithm");
}

inline int solve(const SolveCommand &cmd, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        auto algo = parse_algorithm(cmd.algorithm);
        if (!algo)
            throw MalformedInput("unknown algorithm \"" + cmd.algorithm +
                                 "\" (expected unconstrained-greedy, knapsack-greedy or exact)");
        const std::uint64_t cap = enumeration_cap();
        Problem p = read_problem(cmd.instance);
        if (cmd.with_opt)
            StateSpace(p.instance.n(), p.instance.k()).require_within(cap);

        auto start = std::chrono::steady_clock::now();
        SolveReport r = run_algorithm(*algo, p, cap);
        auto stop = std::chrono::steady_clock::now();
        if (cmd.with_opt) {
            // The unconstrained greedy is measured against the unconstrained optimum.
            Instance reference = *algo == Algorithm::unconstrained_greedy
                                     ? p.instance.with_budget(std::max<std::int64_t>(1, p.instance.total_cost()))
                                     : p.instance;
            EvalCounter unused;
            r.set_optimum(exact_bruteforce(p.oracle, reference, unused, cap).value);
        }

        emit(cmd.output, report_json(p, r).dump(2) + "\n", out);
        if (cmd.csv) {
            ReportRow row{p.name, r, p.instance.n(), p.instance.k(), p.instance.budget(), std::nullopt};
            if (cmd.timing)
                row.millis = std::chrono::duration<double, std::milli>(stop - start).count();
            write_text(*cmd.csv, to_csv({row}));
        }
        return int{kSuccess};
    });
}

struct GenerateCommand {
    GeneratorOptions options;
    std::string family = "coverage";
    std::optional<std::filesystem::path> output;
};

inline int generate(const GenerateCommand &cmd, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        auto fam = parse_family(cmd.family);
        if (!fam)
            throw MalformedInput("unknown family \"" + cmd.family + "\" (expected coverage, separable-sum or tabular)");
        GeneratorOptions opt = cmd.options;
        opt.family = *fam;
        emit(cmd.output, dump_problem(generate_problem(opt)), out);
        return int{kSuccess};
    });
}

inline Json witness_json(const Witness &w) {
    Json j{{"inequality", w.inequality}, {"x", to_json(w.x)}, {"y", to_json(w.y)}, {"lhs", w.lhs}, {"rhs", w.rhs}};
    j["added"] = w.added ? Json::array({w.added->item.value, w.added->dim.value}) : Json(nullptr);
    j["terms"] = w.terms;
    std::string text;
    if (w.inequality == "k_submodularity" && w.terms.size() == 4) {
        text = "f(x)+f(y) = " + format_number(w.terms[0]) + "+" + format_number(w.terms[1]) +
               " < f(x join y)+f(x meet y) = " + format_number(w.terms[2]) + "+" + format_number(w.terms[3]);
    } else if (w.inequality == "orthant_submodularity") {
        text = "gain at x = " + format_number(w.lhs) + " < gain at y = " + format_number(w.rhs);
    } else {
        text = "gain = " + format_number(w.lhs) + " < 0";
    }
    j["description"] = text;
    return j;
}

struct ValidateCommand {
    std::filesystem::path instance;
    std::string mode = "orthant";
};

inline int validate(const ValidateCommand &cmd, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        if (cmd.mode != "orthant" && cmd.mode != "monotone" && cmd.mode != "lattice")
            throw MalformedInput("unknown mode \"" + cmd.mode + "\" (expected orthant, monotone or lattice)");
        ValidationLimits limits = validation_limits();
        Problem p = read_problem(cmd.instance);
        const int n = p.instance.n();
        const int k = p.instance.k();
        ValidationVerdict v = cmd.mode == "orthant"    ? validate_orthant_submodular(p.oracle, n, k, limits)
                              : cmd.mode == "monotone" ? validate_monotone(p.oracle, n, k, limits)
                                                       : validate_lattice_ksubmodular(p.oracle, n, k, limits);
        Json j{{"instance", p.name}, {"mode", cmd.mode}, {"passed", v.passed}};
        j["witness"] = v.witness ? witness_json(*v.witness) : Json(nullptr);
        out << j.dump(2) << '\n';
        return int{v.passed ? kSuccess : kCheckFailed};
    });
}

struct CheckCommand {
    std::string checker = "wolsey";
    std::uint64_t seed = 0;
    std::uint64_t trials = 1000;
    std::optional<std::filesystem::path> instance; // lemma1 / eq2 over a fixed oracle
    std::string population = "optimal";             // eq2 without an instance
};

inline Json summary_json(const TrialSummary &s) {
    Json j{{"checker", s.checker}, {"trials", s.trials}, {"passed", s.passed}, {"skipped", s.skipped},
           {"all_passed", s.all_passed()}};
    if (s.first_failure)
        j["first_failure"] = {{"trial", s.first_failure->trial},
                              {"detail", s.first_failure->detail},
                              {"lhs", s.first_failure->lhs},
                              {"rhs", s.first_failure->rhs}};
    else
        j["first_failure"] = nullptr;
    return j;
}

inline int check(const CheckCommand &cmd, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        if (cmd.trials < 1)
            throw MalformedInput("trials must be at least 1");
        TrialSummary s;
        if (cmd.checker == "wolsey") {
            if (cmd.instance)
                throw MalformedInput("the wolsey checker does not take an instance");
            s = wolsey_trials(cmd.seed, cmd.trials);
        } else if (cmd.checker == "lemma1") {
            s = cmd.instance ? lemma1_trials(read_problem(*cmd.instance).oracle, cmd.seed, cmd.trials)
                             : lemma1_trials(cmd.seed, cmd.trials);
        } else if (cmd.checker == "eq2") {
            if (cmd.instance) {
                s = eq2_trials(read_problem(*cmd.instance).oracle, cmd.seed, cmd.trials);
            } else if (cmd.population == "optimal" || cmd.population == "arbitrary") {
                s = eq2_trials(cmd.seed, cmd.trials,
                               cmd.population == "optimal" ? Eq2Population::optimal : Eq2Population::arbitrary,
                               enumeration_cap());
            } else {
                throw MalformedInput("unknown population \"" + cmd.population + "\" (expected optimal or arbitrary)");
            }
        } else {
            throw MalformedInput("unknown checker \"" + cmd.checker + "\" (expected lemma1, wolsey or eq2)");
        }
        out << summary_json(s).dump(2) << '\n';
        return int{s.all_passed() ? kSuccess : kCheckFailed};
    });
}

struct BenchCommand {
    BenchOptions options;
    std::string family = "mixed";
    std::optional<std::filesystem::path> output; // CSV, stdout when absent
};

inline Json bench_summary_json(const BenchOptions &opt, const BenchSummary &s) {
    return {{"count", opt.count},
            {"min_ratio", s.min_ratio},
            {"mean_ratio", s.mean_ratio},
            {"max_evaluations", s.max_evaluations},
            {"max_count_bound", s.max_bound},
            {"evaluations_within_bound", s.within_bound}};
}

inline int bench(const BenchCommand &cmd, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        BenchOptions opt = cmd.options;
        if (cmd.family == "mixed") {
            opt.family.reset();
        } else {
            auto fam = parse_family(cmd.family);
            if (!fam)
                throw MalformedInput("unknown family \"" + cmd.family + "\"");
            opt.family = *fam;
        }
        opt.cap = enumeration_cap();
        auto rows = run_bench(opt);
        std::string summary = "summary: " + bench_summary_json(opt, summarize(rows)).dump() + "\n";
        if (cmd.output) {
            write_text(*cmd.output, bench_csv(rows));
            out << summary;
        } else {
            out << bench_csv(rows);
            err << summary;
        }
        return int{kSuccess};
    });
}

} // namespace ksub::app

#endif // KSUB_APP_HPP_
