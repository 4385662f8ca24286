#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bbmlab/runner.hpp"

namespace {

using namespace bbmlab;

int cmd_run(const std::string& config_path, const std::string& out_dir, int workers) {
  ExperimentConfig c = load_config(config_path);
  if (workers >= 0) c.workers = static_cast<unsigned>(workers);
  if (!out_dir.empty()) c.output_dir = out_dir;
  RunOutput out = run_experiment(c);
  write_artifacts(c, out, c.output_dir);
  std::size_t failed = 0;
  for (const auto& r : out.reports) {
    std::printf("%-18s %s  lhs=%s %s rhs=%s%s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", format_double(r.lhs).c_str(),
                to_string(r.relation), format_double(r.rhs).c_str(), r.hard ? "  [exact]" : "");
    if (!r.pass) {
      ++failed;
      std::printf("  claim: %s\n", r.citation.c_str());
    }
  }
  std::printf("%s: %zu report(s), %zu failed; artifacts in %s\n", c.experiment.c_str(), out.reports.size(), failed,
              c.output_dir.c_str());
  return out.hard_failure() ? kExitHardFailure : kExitOk;
}

int cmd_report(const std::vector<std::string>& paths, const std::string& json_out) {
  if (paths.empty()) {
    std::fprintf(stderr, "report: no input paths given\n");
    return kExitUsage;
  }
  nlohmann::json summary = nlohmann::json::array();
  bool all_pass = true;
  for (const auto& p : paths) {
    ReportVerdict v = read_verdict(p);
    all_pass = all_pass && v.pass();
    std::printf("%-12s %s  %zu/%zu passed  (%s)\n", v.experiment.c_str(), v.pass() ? "PASS" : "FAIL", v.total - v.failed.size(),
                v.total, v.source.c_str());
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : v.failed) {
      std::printf("  failed %s%s: %s\n", f.name.c_str(), f.hard ? " [exact]" : "", f.citation.c_str());
      failures.push_back({{"name", f.name}, {"hard", f.hard}, {"citation", f.citation}});
    }
    summary.push_back({{"source", v.source}, {"experiment", v.experiment}, {"pass", v.pass()}, {"total", v.total},
                       {"failed", failures}});
  }
  nlohmann::json doc = {{"pass", all_pass}, {"experiments", summary}};
  if (!json_out.empty()) {
    std::ofstream f(json_out);
    require(static_cast<bool>(f), ErrorKind::io, "cannot write '" + json_out + "'");
    f << doc.dump(2) << "\n";
  }
  return all_pass ? kExitOk : kExitHardFailure;
}

int cmd_constants() {
  std::printf("N  quadrature               closed_form\n");
  for (int N = 1; N <= 3; ++N)
    std::printf("%d  %-23s  %s\n", N, format_double(dimensional_constant(N)).c_str(),
                format_double(dimensional_constant_closed_form(N)).c_str());
  return kExitOk;
}

int cmd_list_fields() {
  for (const auto& f : field_catalog())
    std::printf("%-26s %-40s %s\n", f.name.c_str(), f.params.empty() ? "-" : f.params.c_str(), f.summary.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bbmlab: nonlocal BBM-type functionals on sampled fields"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int workers = -1;
  auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("-o,--output", out_dir, "output directory (overrides the config)");
  run->add_option("-w,--workers", workers, "worker threads, 0 = all (overrides the config)")->check(CLI::NonNegativeNumber);

  std::vector<std::string> paths;
  std::string json_out;
  auto* report = app.add_subcommand("report", "aggregate report.json files or run directories");
  report->add_option("paths", paths, "report files or run directories");
  report->add_option("--json", json_out, "write a machine-readable summary here");

  auto* constants = app.add_subcommand("constants", "print the dimensional constants C_1, C_2, C_3");
  auto* list = app.add_subcommand("list-fields", "list the analytic field catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, workers);
    if (*report) return cmd_report(paths, json_out);
    if (*constants) return cmd_constants();
    if (*list) return cmd_list_fields();
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return kExitUsage;
}
