#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "bbmlab/runner.hpp"

using namespace bbmlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("bbmlab-test-" + std::to_string(::getpid())) / name;
  fs::create_directories(p);
  return p;
}

fs::path write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p;
}

int cli(const std::string& args, const fs::path& log) {
  std::string cmd = std::string(BBMLAB_CLI) + " " + args + " > " + log.string() + " 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

ErrorKind kind_of(const std::string& text) {
  try {
    run_experiment(parse_config_text(text));
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::io;  // sentinel: no error
}

const char* kStep = R"({"experiment": "jump-verify", "field": {"name": "step-1d", "params": {"at": 0.5003}},
  "grid": {"n": 1024}, "eps": {"start": 64, "ratio": 0.5, "count": 3}})";

}  // namespace

TEST(Config, DefaultsFromOneTable) {
  auto c = parse_config_text(R"({"experiment": "bbm-sweep"})");
  EXPECT_EQ(c.kappa, Defaults::kappa);
  EXPECT_EQ(c.tolerance, Defaults::tolerance);
  EXPECT_EQ(c.directions, Defaults::directions);
  EXPECT_EQ(c.cube_stride_divisor, Defaults::cube_stride_divisor);
  EXPECT_EQ(c.n, Defaults::grid_n);
  auto eps = c.eps_ladder();
  ASSERT_EQ(eps.size(), static_cast<std::size_t>(Defaults::eps_count));
  EXPECT_DOUBLE_EQ(eps[0], Defaults::eps_start * c.h());
  EXPECT_DOUBLE_EQ(eps[1], eps[0] * Defaults::eps_ratio);
}

TEST(Config, SeedFlowsIntoSeededFields) {
  auto c = parse_config_text(R"({"experiment": "bbm-sweep", "field": {"name": "hoelder"}, "seed": 9})");
  EXPECT_EQ(c.params.at("seed"), std::vector<double>{9.0});
}

TEST(Config, ErrorsHaveDistinctKinds) {
  EXPECT_EQ(kind_of("{not json"), ErrorKind::config_parse);
  EXPECT_EQ(kind_of(R"({"experiment": "bbm-sweep", "eps": {"ratio": 1.5}})"), ErrorKind::config_validation);
  EXPECT_EQ(kind_of(R"({"experiment": "bbm-sweep", "eps": {"count": 0}})"), ErrorKind::config_validation);
  EXPECT_EQ(kind_of(R"({"experiment": "bbm-sweep", "bogus": 1})"), ErrorKind::config_validation);
  EXPECT_EQ(kind_of(R"({"experiment": "nope"})"), ErrorKind::config_validation);
  EXPECT_EQ(kind_of(R"({"experiment": "bbm-sweep", "eps": {"start": 4}})"), ErrorKind::regime_guard);
  EXPECT_EQ(kind_of(R"({"experiment": "bbm-sweep", "field": {"name": "mystery"}})"), ErrorKind::unknown_kind);
  EXPECT_NE(exit_code_for(ErrorKind::config_parse), exit_code_for(ErrorKind::config_validation));
  EXPECT_NE(exit_code_for(ErrorKind::regime_guard), exit_code_for(ErrorKind::unknown_kind));
}

TEST(Run, ConstantsTable) {
  auto out = run_experiment(parse_config_text(R"({"experiment": "constants"})"));
  ASSERT_EQ(out.rows.size(), 3u);
  for (const auto& r : out.reports) EXPECT_TRUE(r.pass);
  EXPECT_NEAR(out.rows[2][1], 2.0 * std::numbers::pi / 3.0, 1e-12);
}

TEST(Run, StepSweepIsFlatAndEveryReportCarriesACitation) {
  auto out = run_experiment(parse_config_text(kStep));
  ASSERT_EQ(out.rows.size(), 3u);
  for (const auto& row : out.rows) EXPECT_NEAR(row[1], 2.0, 1e-12);
  ASSERT_FALSE(out.reports.empty());
  for (const auto& r : out.reports) {
    EXPECT_TRUE(r.pass);
    EXPECT_FALSE(r.citation.empty());
  }
}

TEST(Run, ArtifactsAndCsvPrecision) {
  auto dir = scratch("artifacts");
  auto c = parse_config_text(kStep);
  auto out = run_experiment(c);
  write_artifacts(c, out, dir);
  for (const char* f : {"manifest.json", "sweep.csv", "report.json", "plot.dat"}) EXPECT_TRUE(fs::exists(dir / f)) << f;
  std::string csv = read_file(dir / "sweep.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "eps,value");
  EXPECT_NE(csv.find("0.0625,"), std::string::npos);
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  auto manifest = nlohmann::json::parse(read_file(dir / "manifest.json"));
  EXPECT_EQ(manifest["config"]["experiment"], "jump-verify");
  EXPECT_TRUE(manifest.contains("seed"));
  auto v = read_verdict(dir);
  EXPECT_TRUE(v.pass());
  EXPECT_EQ(v.experiment, "jump-verify");
}

TEST(Run, CsvIndependentOfWorkerCount) {
  const char* cfg = R"({"experiment": "two-sided", "field": {"name": "ball-indicator"}, "domain": {"dim": 2},
    "grid": {"n": 64}, "eps": {"start": 12, "ratio": 0.75, "count": 2}})";
  auto c = parse_config_text(cfg);
  c.workers = 1;
  auto a = csv_text(run_experiment(c));
  c.workers = 5;
  auto b = csv_text(run_experiment(c));
  EXPECT_EQ(a, b);
}

TEST(Cli, ExitCodes) {
  auto dir = scratch("cli");
  auto log = dir / "log.txt";
  auto ok = write_text(dir / "ok.json", kStep);
  EXPECT_EQ(cli("run " + ok.string() + " -o " + (dir / "ok").string(), log), kExitOk);
  EXPECT_EQ(cli("run " + write_text(dir / "bad.json", "{oops").string(), log), kExitParse);
  EXPECT_EQ(cli("run " + write_text(dir / "ratio.json", R"({"experiment": "bbm-sweep", "eps": {"ratio": 2}})").string(), log),
            kExitValidation);
  EXPECT_EQ(cli("run " + write_text(dir / "regime.json", R"({"experiment": "bbm-sweep", "eps": {"start": 2}})").string(), log),
            kExitRegime);
  EXPECT_EQ(
      cli("run " + write_text(dir / "field.json", R"({"experiment": "bbm-sweep", "field": {"name": "zzz"}})").string(), log),
      kExitUnknownField);
  EXPECT_EQ(cli("run " + (dir / "missing.json").string(), log), kExitIo);
  EXPECT_EQ(cli("", log), kExitUsage);
  EXPECT_EQ(cli("constants", log), kExitOk);
  EXPECT_EQ(cli("list-fields", log), kExitOk);
  EXPECT_NE(read_file(log).find("pyramid-eikonal"), std::string::npos);
}

TEST(Cli, ReportVerdicts) {
  auto dir = scratch("report");
  auto log = dir / "log.txt";
  auto ok = write_text(dir / "ok.json", kStep);
  ASSERT_EQ(cli("run " + ok.string() + " -o " + (dir / "pass").string(), log), kExitOk);
  EXPECT_EQ(cli("report " + (dir / "pass").string() + " --json " + (dir / "summary.json").string(), log), kExitOk);
  auto summary = nlohmann::json::parse(read_file(dir / "summary.json"));
  EXPECT_TRUE(summary["pass"].get<bool>());

  fs::create_directories(dir / "fail");
  write_text(dir / "fail" / "report.json", R"({"experiment": "jump-verify", "reports": [
    {"name": "jump-verify", "pass": false, "hard": false, "citation": "jump-energy identity: lim A_hat = C_N int_J |u+ - u-|^q"}]})");
  EXPECT_EQ(cli("report " + (dir / "pass").string() + " " + (dir / "fail").string(), log), kExitHardFailure);
  EXPECT_NE(read_file(log).find("jump-energy identity"), std::string::npos);

  EXPECT_EQ(cli("report", log), kExitUsage);
  write_text(dir / "corrupt.json", "[1, 2");
  EXPECT_EQ(cli("report " + (dir / "corrupt.json").string(), log), kExitParse);
  EXPECT_EQ(cli("report " + (dir / "nowhere").string(), log), kExitIo);
}
