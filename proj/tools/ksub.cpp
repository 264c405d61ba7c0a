// ksub: solve, generate, validate, check and benchmark k-submodular
// knapsack instances. Exit codes: 0 success, 1 check or validation failure,
// 2 input error, 3 enumeration cap exceeded.

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ksub/app.hpp"

namespace {

std::vector<double> parse_fractions(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != part.size() || !(v > 0.0 && v <= 1.0))
            throw ksub::MalformedInput("budget fractions must be numbers in (0, 1], got \"" + part + "\"");
        out.push_back(v);
    }
    return out;
}

} // namespace

int main(int argc, char **argv) {
    namespace app = ksub::app;
    CLI::App cli{"k-submodular maximization under a knapsack constraint"};
    cli.require_subcommand(1);

    app::SolveCommand solve;
    std::string solve_output, solve_csv;
    auto *solve_cmd = cli.add_subcommand("solve", "Run an algorithm on an instance file");
    solve_cmd->add_option("--instance", solve.instance, "Instance JSON")->required();
    solve_cmd->add_option("--algorithm", solve.algorithm, "unconstrained-greedy | knapsack-greedy | exact")
        ->capture_default_str();
    solve_cmd->add_flag("--with-opt", solve.with_opt, "Also compute the exact optimum and the ratio");
    solve_cmd->add_flag("--timing", solve.timing, "Fill the millis CSV column");
    solve_cmd->add_option("--output", solve_output, "JSON report path (default: stdout)");
    solve_cmd->add_option("--csv", solve_csv, "Also write a one-row CSV report");

    app::GenerateCommand gen;
    std::string gen_output;
    auto *gen_cmd = cli.add_subcommand("generate", "Write a seeded random instance");
    gen_cmd->add_option("--seed", gen.options.seed)->capture_default_str();
    gen_cmd->add_option("--n", gen.options.n)->capture_default_str();
    gen_cmd->add_option("--k", gen.options.k)->capture_default_str();
    gen_cmd->add_option("--family", gen.family, "coverage | separable-sum | tabular")->capture_default_str();
    gen_cmd->add_option("--cost-max", gen.options.cost_max)->capture_default_str();
    gen_cmd->add_option("--budget-fraction", gen.options.budget_fraction)->capture_default_str();
    gen_cmd->add_option("--output", gen_output, "Instance path (default: stdout)");

    app::ValidateCommand val;
    auto *val_cmd = cli.add_subcommand("validate", "Exhaustively check a structural property of the oracle");
    val_cmd->add_option("--instance", val.instance, "Instance JSON")->required();
    val_cmd->add_option("--mode", val.mode, "orthant | monotone | lattice")->capture_default_str();

    app::CheckCommand chk;
    std::string chk_instance;
    auto *chk_cmd = cli.add_subcommand("check", "Run a seeded randomized inequality checker");
    chk_cmd->add_option("--checker", chk.checker, "lemma1 | wolsey | eq2")->required();
    chk_cmd->add_option("--seed", chk.seed)->capture_default_str();
    chk_cmd->add_option("--trials", chk.trials)->capture_default_str();
    chk_cmd->add_option("--instance", chk_instance, "Draw trials over this instance's oracle (lemma1, eq2)");
    chk_cmd->add_option("--population", chk.population, "eq2 source of T: optimal | arbitrary")
        ->capture_default_str();

    app::BenchCommand bench;
    std::string bench_output, fractions = "0.3,0.5,0.8";
    auto *bench_cmd = cli.add_subcommand("bench", "Compare knapsack greedy with the exact optimum");
    bench_cmd->add_option("--seed", bench.options.seed)->capture_default_str();
    bench_cmd->add_option("--count", bench.options.count)->capture_default_str();
    bench_cmd->add_option("--n-min", bench.options.n_min)->capture_default_str();
    bench_cmd->add_option("--n-max", bench.options.n_max)->capture_default_str();
    bench_cmd->add_option("--k-min", bench.options.k_min)->capture_default_str();
    bench_cmd->add_option("--k-max", bench.options.k_max)->capture_default_str();
    bench_cmd->add_option("--family", bench.family, "mixed | coverage | separable-sum | tabular")
        ->capture_default_str();
    bench_cmd->add_option("--cost-max", bench.options.cost_max)->capture_default_str();
    bench_cmd->add_option("--budget-fractions", fractions, "Comma-separated, cycled by instance index")
        ->capture_default_str();
    bench_cmd->add_option("--jobs", bench.options.jobs)->capture_default_str();
    bench_cmd->add_flag("--timing", bench.options.timing, "Fill the millis column (output is then not reproducible)");
    bench_cmd->add_option("--output", bench_output, "CSV path (default: stdout)");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return cli.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return cli.exit(e);
    } catch (const CLI::ParseError &e) {
        cli.exit(e);
        return app::kInputError;
    }

    auto path_or_none = [](const std::string &s) -> std::optional<std::filesystem::path> {
        if (s.empty())
            return std::nullopt;
        return std::filesystem::path(s);
    };

    if (solve_cmd->parsed()) {
        solve.output = path_or_none(solve_output);
        solve.csv = path_or_none(solve_csv);
        return app::solve(solve, std::cout, std::cerr);
    }
    if (gen_cmd->parsed()) {
        gen.output = path_or_none(gen_output);
        return app::generate(gen, std::cout, std::cerr);
    }
    if (val_cmd->parsed())
        return app::validate(val, std::cout, std::cerr);
    if (chk_cmd->parsed()) {
        chk.instance = path_or_none(chk_instance);
        return app::check(chk, std::cout, std::cerr);
    }
    if (bench_cmd->parsed()) {
        bench.output = path_or_none(bench_output);
        return app::guarded(std::cerr, [&] {
            bench.options.budget_fractions = parse_fractions(fractions);
            return app::bench(bench, std::cout, std::cerr);
        });
    }
    return app::kInputError;
}
