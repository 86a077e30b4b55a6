#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "../../tools/app/commands.hpp"
#include "worked_example.hpp"

using namespace sseries;
using namespace sseries::app;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kWorkedConfig = fs::path(SSERIES_CONFIG_DIR) / "worked-example.json";

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sseries-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const json& j) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << j.dump(2);
    return p;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }

  int solve(const fs::path& config, const fs::path& out, Overrides o = {}) {
    out_.str("");
    err_.str("");
    return cmd_solve(SolveArgs{config, o, out}, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

json zero_remainder_config() {
  return json::parse(R"({
    "n": 2, "interval": [0, 1], "x0": 0, "c": [1, 1],
    "H": [["2", "3"], ["-1", "-2"]],
    "Z": [["0", "0"], ["0", "0"]],
    "split": {"strategy": "user"},
    "options": {"grid_nodes": 201}
  })");
}

json divergent_config() {
  return json::parse(R"({
    "n": 2, "interval": [0, 1], "x0": 0, "c": [1, 1],
    "H": [["0", "0"], ["0", "0"]],
    "Z": [["0", "20"], ["20", "0"]],
    "split": {"strategy": "user"},
    "options": {"max_terms": 6, "grid_nodes": 201}
  })");
}

std::vector<double> csv_row(const std::string& csv, std::size_t row) {
  std::istringstream is(csv);
  std::string line;
  for (std::size_t i = 0; i <= row; ++i) std::getline(is, line);
  std::vector<double> out;
  std::istringstream ls(line);
  for (std::string cell; std::getline(ls, cell, ',');) out.push_back(std::stod(cell));
  return out;
}

}  // namespace

TEST_F(Cli, WorkedExampleSolves) {
  ASSERT_EQ(solve(kWorkedConfig, dir_), 0) << err_.str();
  const std::string csv = slurp(dir_ / "solution.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,y1,y2");
  const auto last = csv_row(csv, 1001);
  ASSERT_EQ(last.size(), 3u);
  EXPECT_EQ(last[0], 1.0);
  const Vector ref = sseries::testing::worked_closed_form(1.0, 0.5, 0.5);
  EXPECT_NEAR(last[1], ref[0], 1e-4);
  EXPECT_NEAR(last[2], ref[1], 1e-4);

  const json d = json::parse(slurp(dir_ / "diagnostics.json"));
  for (const char* key : {"stop_reason", "n_terms", "term_sup_norms", "residual_sup", "grid_nodes", "elapsed_ms"})
    EXPECT_TRUE(d.contains(key)) << key;
  EXPECT_EQ(d["stop_reason"], "ToleranceMet");
  EXPECT_EQ(d["grid_nodes"], 1001);
  EXPECT_EQ(d["term_sup_norms"].size(), d["n_terms"].get<std::size_t>());

  EXPECT_EQ(slurp(dir_ / "terms.csv").substr(0, 13), "x,term,y1,y2\n");
  const std::string plot = slurp(dir_ / "plot.dat");
  EXPECT_EQ(plot.rfind("# term 0\n0 ", 0), 0u);
  EXPECT_NE(plot.find("\n\n\n# term 1\n"), std::string::npos);
}

TEST_F(Cli, ZeroRemainderStopsAfterOneTerm) {
  ASSERT_EQ(solve(write_config("z0.json", zero_remainder_config()), dir_), 0) << err_.str();
  EXPECT_EQ(json::parse(slurp(dir_ / "diagnostics.json"))["n_terms"], 1);
}

TEST_F(Cli, ReversedIntervalIsInputError) {
  json j = zero_remainder_config();
  j["interval"] = json::array({1, 0});
  EXPECT_EQ(solve(write_config("bad.json", j), dir_), 1);
  EXPECT_NE(err_.str().find("interval"), std::string::npos) << err_.str();
}

TEST_F(Cli, MalformedConfigNamesLineOrField) {
  const fs::path p = dir_ / "syntax.json";
  std::ofstream(p) << "{\n  \"n\": 2,\n  \"interval\": [0 1]\n}\n";
  EXPECT_EQ(solve(p, dir_), 1);
  EXPECT_NE(err_.str().find("line 3"), std::string::npos) << err_.str();

  json j = zero_remainder_config();
  j["Z"][1][0] = "2*y";
  EXPECT_EQ(solve(write_config("ident.json", j), dir_), 1);
  EXPECT_NE(err_.str().find("Z[1][0]"), std::string::npos) << err_.str();

  EXPECT_EQ(solve(dir_ / "missing.json", dir_), 1);
}

TEST_F(Cli, OverridesReplaceConfigValues) {
  Overrides o;
  o.grid = 101;
  o.terms = 2;
  EXPECT_EQ(solve(kWorkedConfig, dir_, o), 2);
  const json d = json::parse(slurp(dir_ / "diagnostics.json"));
  EXPECT_EQ(d["grid_nodes"], 101);
  EXPECT_EQ(d["n_terms"], 2);
  EXPECT_EQ(d["stop_reason"], "MaxTermsReached");
}

TEST_F(Cli, DivergentSplitIsReported) {
  const fs::path cfg = write_config("div.json", divergent_config());
  EXPECT_NE(solve(cfg, dir_), 0);
  EXPECT_NE(json::parse(slurp(dir_ / "diagnostics.json"))["stop_reason"], "ToleranceMet");
  std::ostringstream out, err;
  EXPECT_NE(cmd_compare(CompareArgs{cfg, {}, 1e-3}, out, err), 0);
}

TEST_F(Cli, CompareWorkedExample) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_compare(CompareArgs{kWorkedConfig, {}, 1e-4}, out, err), 0) << err.str();
  const std::string s = out.str();
  const auto pos = s.find("sup_diff ");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_LE(std::stod(s.substr(pos + 9)), 1e-4);
}

TEST_F(Cli, CompareZeroRemainderIsExactUpToRk4) {
  std::ostringstream out, err;
  ASSERT_EQ(cmd_compare(CompareArgs{write_config("z0.json", zero_remainder_config()), {}, 1e-8}, out, err), 0)
      << out.str() << err.str();
}

TEST_F(Cli, CompareThresholdExceeded) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_compare(CompareArgs{kWorkedConfig, {}, 1e-15}, out, err), 4);
}

TEST_F(Cli, ReduceExamples) {
  auto reduce = [&](const json& spec) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_reduce(ReduceArgs{write_config("ode.json", spec), std::nullopt}, out, err), 0) << err.str();
    return json::parse(out.str());
  };
  const json second = reduce(json::parse(R"({"order": 2, "coefficients": ["0", "-1"], "interval": [0, 1],
                                             "x0": 0, "c": [1, 1]})"));
  EXPECT_EQ(second["n"], 2);
  EXPECT_EQ(second["A"], json::parse(R"([["0", "1"], ["1", "0"]])"));

  const json first = reduce(json::parse(R"({"order": 1, "coefficients": ["2"], "interval": [0, 1],
                                            "x0": 0, "c": [1]})"));
  EXPECT_EQ(first["A"], json::parse(R"([["-2"]])"));

  const json variable = reduce(json::parse(R"j({"order": 2, "coefficients": ["x", "1"], "forcing": "sin(x)",
                                               "interval": [0, 1], "x0": 0, "c": [0, 0]})j"));
  EXPECT_EQ(variable["A"][1], json::parse(R"(["-1", "-x"])"));
  EXPECT_EQ(variable["F"], json::parse(R"j(["0", "sin(x)"])j"));

  std::ostringstream out, err;
  EXPECT_EQ(cmd_reduce(ReduceArgs{write_config("bad.json", json::parse(R"({"order": 2})")), std::nullopt}, out, err), 1);
}

TEST_F(Cli, ReduceOutputFeedsSolve) {
  const json spec = json::parse(R"({"order": 2, "coefficients": ["0", "-1"], "interval": [0, 1], "x0": 0,
                                    "c": [1, 1], "options": {"grid_nodes": 1001}})");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_reduce(ReduceArgs{write_config("ode.json", spec), dir_}, out, err), 0) << err.str();
  ASSERT_EQ(solve(dir_ / "system.json", dir_ / "run"), 0) << err_.str();
  const auto last = csv_row(slurp(dir_ / "run" / "solution.csv"), 1001);
  EXPECT_NEAR(last[1], std::exp(1.0), 1e-6);
}

TEST_F(Cli, OutputsAreDeterministic) {
  ASSERT_EQ(solve(kWorkedConfig, dir_ / "a"), 0);
  ASSERT_EQ(solve(kWorkedConfig, dir_ / "b"), 0);
  for (const char* f : {"solution.csv", "terms.csv", "plot.dat"})
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
  json da = json::parse(slurp(dir_ / "a" / "diagnostics.json"));
  json db = json::parse(slurp(dir_ / "b" / "diagnostics.json"));
  da.erase("elapsed_ms");
  db.erase("elapsed_ms");
  EXPECT_EQ(da.dump(), db.dump());
}

TEST_F(Cli, ExecutableExitCodes) {
  const std::string exe = SSERIES_CLI_PATH;
  auto run = [&](const std::string& args) {
    const int status = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  EXPECT_EQ(run("solve --config " + kWorkedConfig.string() + " --out " + (dir_ / "exe").string()), 0);
  EXPECT_EQ(run("solve --config " + kWorkedConfig.string() + " --terms 3 --out " + (dir_ / "exe").string()), 2);
  EXPECT_EQ(run("compare --config " + write_config("div.json", divergent_config()).string()), 3);
  EXPECT_EQ(run("solve"), 1);
  EXPECT_EQ(run("solve --config " + (dir_ / "none.json").string()), 1);
}
