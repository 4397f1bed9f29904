#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "app.hpp"
#include "config.hpp"
#include "json.hpp"
#include "suites.hpp"

using namespace sdr::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run(std::move(args), out, err);
  return {status, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sdr-cli-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST(Config, KeyValueText) {
  const RunConfig cfg = parse_config(
      "# comment\n"
      "suite = specfun, montgomery\n"
      "dim = 2   # trailing\n"
      "seed = 12\n"
      "n = 128\n"
      "tol = lieb=0.1, *=0.01\n");
  EXPECT_EQ(cfg.suites, (std::vector<std::string>{"specfun", "montgomery"}));
  EXPECT_EQ(cfg.dims, std::vector<int>{2});
  EXPECT_EQ(cfg.seed, 12u);
  EXPECT_EQ(cfg.n, 128u);
  EXPECT_EQ(cfg.tolerance_for("lieb"), 0.1);
  EXPECT_EQ(cfg.tolerance_for("weight"), 0.01);
  EXPECT_EQ(cfg.trials, 100u);
}

TEST(Config, JsonObject) {
  const RunConfig cfg = parse_config(R"({"suite": ["rearrange"], "seed": 5, "trials": 7, "tol": {"weight": 0.5}})");
  EXPECT_EQ(cfg.suites, std::vector<std::string>{"rearrange"});
  EXPECT_EQ(cfg.seed, 5u);
  EXPECT_EQ(cfg.trials, 7u);
  EXPECT_EQ(cfg.tolerance_for("weight"), 0.5);
  EXPECT_FALSE(cfg.tolerance_for("lieb").has_value());
}

TEST(Config, ErrorsCarryPositions) {
  auto where = [](std::string_view text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  EXPECT_EQ(where("seed = 1\n\nbogus = 3\n"), std::make_pair(std::size_t{3}, std::size_t{1}));
  EXPECT_EQ(where("seed = 1\n  n = 100\n"), std::make_pair(std::size_t{2}, std::size_t{7}));
  EXPECT_EQ(where("seed = 1\nseed = 2\n"), std::make_pair(std::size_t{2}, std::size_t{1}));
  EXPECT_EQ(where("seed = 1\njust words\n"), std::make_pair(std::size_t{2}, std::size_t{1}));
  EXPECT_EQ(where("{\n  \"seed\": 1,\n  \"n\": 100\n}"), std::make_pair(std::size_t{3}, std::size_t{3}));
  EXPECT_EQ(where("{\n  \"seed\": 1,\n  \"n\" 8\n}").first, 3u);
}

TEST(Config, ValueValidation) {
  RunConfig cfg;
  EXPECT_THROW(apply_setting(cfg, "dim", "3"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "n", "4"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "n", "12"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "trials", "0"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "seed", "-1"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "suite", "nothing"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "tol", "lieb=-1"), ConfigError);
  EXPECT_THROW(validate(cfg), ConfigError);  // no seed
  apply_setting(cfg, "seed", "18446744073709551615");
  EXPECT_NO_THROW(validate(cfg));
  apply_setting(cfg, "suite", "all");
  EXPECT_EQ(cfg.suites, suite_names());
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({}).status, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).status, kExitUsage);
  EXPECT_EQ(invoke({"table", "nosuch"}).status, kExitUsage);
  const fs::path dir = scratch("noseed");
  const Result r = invoke({"run", "--suite", "specfun", "--out", dir.string()});
  EXPECT_EQ(r.status, kExitUsage);
  EXPECT_NE(r.err.find("seed"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir));
}

TEST(Cli, ConfigFileErrorIsLocated) {
  const fs::path dir = scratch("badcfg");
  fs::create_directories(dir);
  std::ofstream(dir / "run.cfg") << "seed = 3\nsuite = specfun\nwidth = 9\n";
  const Result r = invoke({"run", "--config", (dir / "run.cfg").string(), "--out", (dir / "out").string()});
  EXPECT_EQ(r.status, kExitUsage);
  EXPECT_NE(r.err.find("line 3, column 1"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir / "out"));
}

TEST(Cli, TableSpecfun) {
  const Result r = invoke({"table", "specfun", "--order", "-0.5", "--xmax", "1", "--step", "0.5"});
  ASSERT_EQ(r.status, kExitPass);
  std::istringstream lines(r.out);
  std::string header, first, second, extra;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_EQ(header, "order,x,J,scriptJ");
  EXPECT_EQ(first.rfind("-0.5,0.5,", 0), 0u);
  EXPECT_FALSE(std::getline(lines, extra) && !extra.empty());
  EXPECT_EQ(invoke({"table", "specfun", "--order", "-2"}).status, kExitUsage);
}

TEST(Cli, RearrangeCsvInput) {
  const fs::path dir = scratch("rearr");
  fs::create_directories(dir);
  std::ofstream(dir / "f.csv") << "x,re,im\n-1.5,1,0\n-0.5,0,0\n0.5,0,3\n1.5,2,0\n";
  const Result r = invoke({"rearrange", "--input", (dir / "f.csv").string()});
  ASSERT_EQ(r.status, kExitPass) << r.err;
  EXPECT_EQ(r.out, "x,level\n-1.5,1\n-0.5,3\n0.5,2\n1.5,0\n");
  EXPECT_EQ(invoke({"rearrange", "--input", (dir / "missing.bin").string()}).status, kExitFail);
}

TEST(Cli, ReportsAreReproducibleAcrossThreadCounts) {
  const fs::path a = scratch("repro-a"), b = scratch("repro-b");
  const std::vector<std::string> common = {"run", "--suite", "montgomery,rearrange", "--trials", "6", "--seed", "99"};
  auto with_out = [&](const fs::path& p) {
    auto args = common;
    args.insert(args.end(), {"--out", p.string()});
    return args;
  };
  setenv("VERIFY_THREADS", "1", 1);
  const Result ra = invoke(with_out(a));
  setenv("VERIFY_THREADS", "3", 1);
  const Result rb = invoke(with_out(b));
  unsetenv("VERIFY_THREADS");
  ASSERT_EQ(ra.status, kExitPass) << ra.out << ra.err;
  ASSERT_EQ(rb.status, kExitPass);
  EXPECT_EQ(strip_timestamp(slurp(a / "report.json")), strip_timestamp(slurp(b / "report.json")));
  EXPECT_EQ(slurp(a / "summary.csv"), slurp(b / "summary.csv"));
  const auto doc = nlohmann::json::parse(slurp(a / "report.json"));
  EXPECT_EQ(doc.at("seed"), "99");
  EXPECT_TRUE(doc.contains("timestamp"));
}

TEST(Cli, SuiteErrorIsEmbeddedInReport) {
  const fs::path dir = scratch("embed");
  const Result r = invoke({"run", "--suite", "schrodinger", "--n", "8", "--seed", "1", "--out", dir.string()});
  EXPECT_EQ(r.status, kExitFail);
  const auto doc = nlohmann::json::parse(slurp(dir / "report.json"));
  ASSERT_EQ(doc.at("reports").size(), 1u);
  const auto& rep = doc.at("reports")[0];
  EXPECT_EQ(rep.at("name"), "schrodinger_error");
  EXPECT_EQ(rep.at("pass"), false);
  EXPECT_EQ(rep.at("metadata").at("error_kind"), "precondition-error");
}

TEST(Cli, ExitStatusIgnoresExplorations) {
  sdr::InequalityReport bad;
  bad.lhs = 2.0;
  bad.rhs = 1.0;
  bad.finalize();
  EXPECT_EQ(exit_status({bad}), kExitFail);
  bad.kind = sdr::ReportKind::exploration;
  EXPECT_EQ(exit_status({bad}), kExitPass);
}

TEST(Suites, WorstOfPicksFirstFailure) {
  std::vector<sdr::InequalityReport> trials(3);
  for (int k = 0; k < 3; ++k) {
    trials[k].lhs = k == 1 ? 2.0 : 0.5 + 0.1 * k;
    trials[k].rhs = 1.0;
    trials[k].finalize();
  }
  const auto w = worst_of(trials, "combined");
  EXPECT_EQ(w.name, "combined");
  EXPECT_FALSE(w.pass);
  EXPECT_EQ(w.metadata.at("worst_trial"), 1.0);
  EXPECT_EQ(w.metadata.at("failures"), 1.0);
}
