#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ksub/app.hpp"
#include "test_support.hpp"

namespace ksub {
namespace {

namespace fs = std::filesystem;

struct Captured {
    int code = -1;
    std::string out;
    std::string err;
};

template <class Cmd, class Fn>
Captured run(Fn fn, const Cmd &cmd) {
    std::ostringstream out, err;
    Captured c;
    c.code = fn(cmd, out, err);
    c.out = out.str();
    c.err = err.str();
    return c;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class AppTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("ksub_app_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

TEST_F(AppTest, SolveWithOptimumOnOracleW) {
    app::SolveCommand cmd;
    cmd.instance = testing::fixture("oracle_w.json");
    cmd.with_opt = true;
    cmd.csv = dir_ / "r.csv";
    auto c = run(app::solve, cmd);
    ASSERT_EQ(c.code, 0) << c.err;
    Json j = Json::parse(c.out);
    EXPECT_EQ(j["value"], 3.0);
    EXPECT_EQ(j["optimum"], 3.0);
    EXPECT_EQ(j["ratio"], 1.0);
    EXPECT_EQ(j["evaluations"], 8);
    EXPECT_EQ(j["solution"], Json::parse("[[1,1],[2,2]]"));
    EXPECT_EQ(slurp(*cmd.csv), std::string(kCsvHeader) + "\noracle_w,knapsack_greedy,2,2,3,3,3,1,8,\n");
}

TEST_F(AppTest, SolveExactAndUnconstrained) {
    app::SolveCommand cmd;
    cmd.instance = testing::fixture("oracle_w.json");
    cmd.algorithm = "exact";
    auto c = run(app::solve, cmd);
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(Json::parse(c.out)["value"], 3.0);

    cmd.algorithm = "unconstrained-greedy";
    cmd.with_opt = true;
    c = run(app::solve, cmd);
    ASSERT_EQ(c.code, 0) << c.err;
    Json j = Json::parse(c.out);
    EXPECT_EQ(j["evaluations"], 8); // 2nk
    EXPECT_EQ(j["ratio"], 1.0);
}

TEST_F(AppTest, SolveZeroOracleLeavesRatioEmpty) {
    app::SolveCommand cmd;
    cmd.instance = testing::fixture("zero.json");
    cmd.with_opt = true;
    cmd.csv = dir_ / "z.csv";
    auto c = run(app::solve, cmd);
    ASSERT_EQ(c.code, 0) << c.err;
    Json j = Json::parse(c.out);
    EXPECT_EQ(j["optimum"], 0.0);
    EXPECT_TRUE(j["ratio"].is_null());
    EXPECT_NE(slurp(*cmd.csv).find(",0,0,,"), std::string::npos);
}

TEST_F(AppTest, SolveInputErrors) {
    app::SolveCommand cmd;
    cmd.instance = testing::fixture("broken.json");
    auto c = run(app::solve, cmd);
    EXPECT_EQ(c.code, 2);
    EXPECT_NE(c.err.find("broken:5:"), std::string::npos) << c.err;

    cmd.instance = testing::fixture("oracle_w.json");
    cmd.algorithm = "simulated-annealing";
    EXPECT_EQ(run(app::solve, cmd).code, 2);

    cmd.instance = dir_ / "missing.json";
    cmd.algorithm = "exact";
    EXPECT_EQ(run(app::solve, cmd).code, 2);
}

TEST_F(AppTest, ValidateModes) {
    app::ValidateCommand cmd;
    cmd.instance = testing::fixture("oracle_w.json");
    EXPECT_EQ(run(app::validate, cmd).code, 0);

    cmd.instance = testing::fixture("zero.json");
    cmd.mode = "monotone";
    EXPECT_EQ(run(app::validate, cmd).code, 0);

    cmd.instance = testing::fixture("supermodular.json");
    cmd.mode = "lattice";
    auto c = run(app::validate, cmd);
    EXPECT_EQ(c.code, 1);
    Json j = Json::parse(c.out);
    EXPECT_FALSE(j["passed"]);
    EXPECT_EQ(j["witness"]["x"], Json::parse("[[1,1]]"));
    EXPECT_EQ(j["witness"]["y"], Json::parse("[[2,1]]"));
    EXPECT_EQ(j["witness"]["description"], "f(x)+f(y) = 1+1 < f(x join y)+f(x meet y) = 3+0");

    cmd.mode = "orthant";
    c = run(app::validate, cmd);
    EXPECT_EQ(c.code, 1);
    j = Json::parse(c.out);
    EXPECT_EQ(j["witness"]["x"], Json::array());
    EXPECT_EQ(j["witness"]["added"], Json::parse("[1,1]"));

    cmd.mode = "sideways";
    EXPECT_EQ(run(app::validate, cmd).code, 2);
}

TEST_F(AppTest, ValidateOverCapExitsThree) {
    app::GenerateCommand gen;
    gen.options.seed = 1;
    gen.options.n = 11;
    gen.options.k = 3;
    gen.output = dir_ / "big.json";
    ASSERT_EQ(run(app::generate, gen).code, 0);
    app::ValidateCommand cmd;
    cmd.instance = *gen.output;
    auto c = run(app::validate, cmd);
    EXPECT_EQ(c.code, 3);
    EXPECT_FALSE(c.err.empty());

    app::SolveCommand solve;
    solve.instance = *gen.output;
    solve.algorithm = "exact";
    EXPECT_EQ(run(app::solve, solve).code, 3);
    solve.algorithm = "knapsack-greedy";
    EXPECT_EQ(run(app::solve, solve).code, 0);
}

TEST_F(AppTest, CheckCommands) {
    app::CheckCommand cmd;
    cmd.checker = "wolsey";
    cmd.trials = 500;
    auto c = run(app::check, cmd);
    EXPECT_EQ(c.code, 0) << c.err;
    EXPECT_TRUE(Json::parse(c.out)["all_passed"]);

    cmd.checker = "lemma1";
    EXPECT_EQ(run(app::check, cmd).code, 0);

    cmd.instance = testing::fixture("supermodular.json");
    c = run(app::check, cmd);
    EXPECT_EQ(c.code, 1);
    EXPECT_FALSE(Json::parse(c.out)["first_failure"].is_null());

    cmd.instance.reset();
    cmd.checker = "eq2";
    cmd.trials = 50;
    EXPECT_EQ(run(app::check, cmd).code, 0);

    cmd.checker = "lemma2";
    EXPECT_EQ(run(app::check, cmd).code, 2);
    cmd.checker = "wolsey";
    cmd.trials = 0;
    EXPECT_EQ(run(app::check, cmd).code, 2);
}

TEST_F(AppTest, GenerateIsByteIdenticalAndValid) {
    app::GenerateCommand gen;
    gen.options.seed = 7;
    gen.options.n = 8;
    gen.options.k = 3;
    auto a = run(app::generate, gen);
    auto b = run(app::generate, gen);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);

    for (std::string fam : {"coverage", "separable-sum", "tabular"}) {
        gen.family = fam;
        gen.options.n = 5;
        gen.output = dir_ / (fam + ".json");
        ASSERT_EQ(run(app::generate, gen).code, 0) << fam;
        app::ValidateCommand v;
        v.instance = *gen.output;
        EXPECT_EQ(run(app::validate, v).code, 0) << fam;
        v.mode = "monotone";
        EXPECT_EQ(run(app::validate, v).code, 0) << fam;
    }

    gen.family = "coverage";
    gen.options.n = 8;
    gen.output = dir_ / "n8.json";
    ASSERT_EQ(run(app::generate, gen).code, 0);
    app::SolveCommand solve;
    solve.instance = *gen.output;
    solve.algorithm = "exact";
    EXPECT_EQ(run(app::solve, solve).code, 0);
}

TEST_F(AppTest, GenerateRejectsBadParameters) {
    app::GenerateCommand gen;
    gen.family = "matroid";
    EXPECT_EQ(run(app::generate, gen).code, 2);
    gen.family = "coverage";
    gen.options.n = 0;
    EXPECT_EQ(run(app::generate, gen).code, 2);
    gen.options.n = 4;
    gen.options.budget_fraction = 0.0;
    EXPECT_EQ(run(app::generate, gen).code, 2);
}

TEST_F(AppTest, BenchIsReproducible) {
    app::BenchCommand cmd;
    cmd.options.seed = 3;
    cmd.options.count = 12;
    auto a = run(app::bench, cmd);
    ASSERT_EQ(a.code, 0) << a.err;
    cmd.options.jobs = 3;
    auto b = run(app::bench, cmd);
    EXPECT_EQ(a.out, b.out);

    std::istringstream lines(a.out);
    std::string line;
    int rows = -1;
    while (std::getline(lines, line))
        ++rows;
    EXPECT_EQ(rows, 12);
    EXPECT_EQ(a.out.rfind(std::string(kCsvHeader), 0), 0u);
    EXPECT_NE(a.err.find("\"evaluations_within_bound\":true"), std::string::npos) << a.err;

    cmd.output = dir_ / "bench.csv";
    auto c = run(app::bench, cmd);
    ASSERT_EQ(c.code, 0);
    EXPECT_EQ(slurp(*cmd.output), a.out);
    EXPECT_EQ(c.out.rfind("summary: ", 0), 0u);
}

TEST_F(AppTest, BenchRejectsBadOptions) {
    app::BenchCommand cmd;
    cmd.options.count = 0;
    EXPECT_EQ(run(app::bench, cmd).code, 2);
    cmd.options.count = 1;
    cmd.options.n_min = 6;
    cmd.options.n_max = 4;
    EXPECT_EQ(run(app::bench, cmd).code, 2);
    cmd.options.n_max = 8;
    cmd.family = "nope";
    EXPECT_EQ(run(app::bench, cmd).code, 2);
}

} // namespace
} // namespace ksub
