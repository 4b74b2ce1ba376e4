#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "photonfilter/series_io.hpp"
#include "photonfilter_cli/cli.hpp"

using namespace photonfilter;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "photonfilter_cli_tests";
  fs::create_directories(dir);
  fs::remove(dir / name);
  return dir / name;
}

SeriesTable read_table(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"launch"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"me", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"me", "--kappa", "fast"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"ensemble", "--engine", "turbo"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"me", "--format", "xml"}).code, cli::kExitUsage);
}

TEST(Cli, InvalidConfigurationExitsTwo) {
  const CliRun r = run({"me", "--dt", "5"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("dt"), std::string::npos);
  EXPECT_EQ(run({"trajectory", "--tend", "1"}).code, cli::kExitUsage);
}

TEST(Cli, HelpExitsZero) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("ensemble"), std::string::npos);
  EXPECT_EQ(run({"ensemble", "--help"}).code, cli::kExitOk);
}

TEST(Cli, UnwritableOutputExitsOne) {
  const CliRun r = run({"me", "--dt", "0.01", "--out", "/nonexistent-dir/me.csv"});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.err.find("nonexistent-dir"), std::string::npos);
}

TEST(Cli, MasterEquationSeries) {
  const CliRun r = run({"me", "--dt", "0.01"});
  ASSERT_EQ(r.code, cli::kExitOk);
  const SeriesTable t = read_table(r.out);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"t", "me_n", "analytic_n"}));
  EXPECT_EQ(t.rows.size(), 10301u);
  EXPECT_NE(r.err.find("peak"), std::string::npos);
  EXPECT_EQ(r.out.rfind("# config ", 0), 0u);
}

TEST(Cli, FasterCavityDecaysFasterLate) {
  const CliRun fast = run({"me", "--kappa", "0.2", "--dt", "0.01"});
  const CliRun slow = run({"me", "--kappa", "0.05", "--dt", "0.01"});
  ASSERT_EQ(fast.code, 0);
  ASSERT_EQ(slow.code, 0);
  const SeriesTable a = read_table(fast.out);
  const SeriesTable b = read_table(slow.out);
  for (std::size_t k = a.rows.size() - 1000; k < a.rows.size(); ++k) EXPECT_LT(a.rows[k][1], b.rows[k][1]);
}

TEST(Cli, EnsembleWritesColumnsAndConfig) {
  const fs::path p = scratch("run.csv");
  const CliRun r = run({"ensemble", "--detector", "homodyne", "--ntraj", "20", "--seed", "7", "--tend", "30",
                     "--out", p.string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("sup |mean - me|"), std::string::npos);
  std::ifstream in(p);
  std::string config_line;
  std::getline(in, config_line);
  const auto cfg = nlohmann::json::parse(config_line.substr(9));
  EXPECT_EQ(cfg["ntraj"], 20);
  EXPECT_EQ(cfg["seed"], 7);
  EXPECT_EQ(cfg["t_end"], 30.0);
  in.seekg(0);
  const SeriesTable t = read_csv(in);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"t", "mean_n", "stderr_n", "me_n", "analytic_n"}));
  EXPECT_EQ(t.rows.size(), 30001u);
}

TEST(Cli, SameArgumentsSameBytes) {
  const fs::path a = scratch("a.csv");
  const fs::path b = scratch("b.csv");
  const fs::path c = scratch("c.csv");
  const std::vector<std::string> base{"ensemble", "--detector", "photocount", "--ntraj", "40", "--seed", "7",
                                      "--tend", "40"};
  auto with = [&](const fs::path& p, const std::string& workers) {
    auto args = base;
    args.insert(args.end(), {"--out", p.string(), "--workers", workers});
    return run(args).code;
  };
  ASSERT_EQ(with(a, "1"), 0);
  ASSERT_EQ(with(b, "1"), 0);
  ASSERT_EQ(with(c, "3"), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a), slurp(c));
}

TEST(Cli, JsonCarriesSeed) {
  const fs::path p = scratch("traj.json");
  ASSERT_EQ(run({"trajectory", "--seed", "1234", "--tend", "10", "--format", "json", "--out", p.string()}).code, 0);
  const auto doc = nlohmann::json::parse(slurp(p));
  EXPECT_EQ(doc["seed"], 1234);
  EXPECT_EQ(doc["config"]["seed"], 1234);
  EXPECT_EQ(doc["times"].size(), 10001u);
  for (const char* key : {"n_cond", "record", "rate", "norm", "vacuum_norm"}) EXPECT_TRUE(doc["series"].contains(key));
}

TEST(Cli, TrajectoryIsFirstEnsembleMember) {
  const CliRun one = run({"trajectory", "--seed", "5", "--tend", "25", "--detector", "photocount"});
  const CliRun ens = run({"ensemble", "--seed", "5", "--tend", "25", "--detector", "photocount", "--ntraj", "1"});
  ASSERT_EQ(one.code, 0);
  ASSERT_EQ(ens.code, 0);
  const SeriesTable a = read_table(one.out);
  const SeriesTable b = read_table(ens.out);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) ASSERT_EQ(a.rows[k][1], b.rows[k][1]);
}

TEST(Cli, GenericEngineSelectable) {
  const CliRun r = run({"trajectory", "--engine", "generic", "--dim", "3", "--tend", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"engine\":\"generic\""), std::string::npos);
  EXPECT_NE(r.out.find("\"fock_dim\":3"), std::string::npos);
}

TEST(Cli, VerifySmallSuitePasses) {
  const CliRun r = run({"verify", "--ntraj", "10"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("checks passed"), std::string::npos);
}
