#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bbmlab/aviles_giga.hpp"
#include "bbmlab/b_space.hpp"
#include "bbmlab/bbm_kernels.hpp"
#include "bbmlab/catalog.hpp"
#include "bbmlab/error.hpp"
#include "bbmlab/grid.hpp"
#include "bbmlab/jump_theory.hpp"
#include "bbmlab/mollifier.hpp"
#include "bbmlab/report.hpp"
#include "bbmlab/variation_1d.hpp"

namespace bbmlab {

inline constexpr const char* kVersion = "1.0.0";

/// Every configuration default lives here.
struct Defaults {
  static constexpr double kappa = 8.0;
  static constexpr double tolerance = 0.05;
  static constexpr double slack = 0.10;
  static constexpr int directions = 0;  // resolves to 2N + 16
  static constexpr int cube_stride_divisor = 4;
  static constexpr double q = 2.0;
  static constexpr double p = 3.0;
  static constexpr int grid_n = 256;
  static constexpr double eps_start = 32.0;
  static constexpr double eps_ratio = 0.5;
  static constexpr int eps_count = 4;
  static constexpr int mollifier_k = 2;
  static constexpr int mollifier_resolution = 64;
  static constexpr std::uint64_t seed = 1;
  static constexpr unsigned workers = 0;
};

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitHardFailure = 1,
  kExitParse = 2,
  kExitValidation = 3,
  kExitRegime = 4,
  kExitUnknownField = 5,
  kExitIo = 6,
  kExitUsage = 64,
};

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::config_parse: return kExitParse;
    case ErrorKind::regime_guard: return kExitRegime;
    case ErrorKind::unknown_kind: return kExitUnknownField;
    case ErrorKind::io: return kExitIo;
    default: return kExitValidation;
  }
}

inline const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> k = {"bbm-sweep", "jump-verify", "q1-bv",   "two-sided", "besov",    "gagliardo",
                                             "vq",        "b-space",     "ag-upper", "ag-chain",  "constants"};
  return k;
}

struct ExperimentConfig {
  std::string experiment;
  std::string field = "step-1d";
  FieldParams params;
  Domain domain = Domain::unit_box(1);
  int n = Defaults::grid_n;
  double q = Defaults::q;
  double p = Defaults::p;
  double eps_start = Defaults::eps_start;
  bool eps_in_h = true;
  double eps_ratio = Defaults::eps_ratio;
  int eps_count = Defaults::eps_count;
  double kappa = Defaults::kappa;
  double tolerance = Defaults::tolerance;
  double slack = Defaults::slack;
  FitModel fit = FitModel::linear;
  int directions = Defaults::directions;
  int cube_stride_divisor = Defaults::cube_stride_divisor;
  MollifierProfile profile = MollifierProfile::polynomial_bump;
  int mollifier_k = Defaults::mollifier_k;
  int mollifier_resolution = Defaults::mollifier_resolution;
  std::uint64_t seed = Defaults::seed;
  unsigned workers = Defaults::workers;
  std::string output_dir = "bbmlab-out";

  double h() const { return (domain.hi[0] - domain.lo[0]) / n; }

  std::vector<double> eps_ladder() const {
    std::vector<double> e;
    double s = eps_in_h ? eps_start * h() : eps_start;
    for (int i = 0; i < eps_count; ++i) e.push_back(s * std::pow(eps_ratio, i));
    return e;
  }

  KernelOptions kernel() const { return KernelOptions{kappa, workers}; }
};

namespace detail {

using nlohmann::json;

inline void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  require(j.is_object(), ErrorKind::config_validation, where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    require(ok, ErrorKind::config_validation, "unknown key '" + it.key() + "' in " + where);
  }
}

inline double get_num(const json& j, const char* key, double def) {
  if (!j.contains(key)) return def;
  require(j[key].is_number(), ErrorKind::config_validation, std::string("'") + key + "' must be a number");
  return j[key].get<double>();
}

inline int get_int(const json& j, const char* key, int def) {
  if (!j.contains(key)) return def;
  require(j[key].is_number_integer(), ErrorKind::config_validation, std::string("'") + key + "' must be an integer");
  return j[key].get<int>();
}

inline std::string get_str(const json& j, const char* key, const std::string& def) {
  if (!j.contains(key)) return def;
  require(j[key].is_string(), ErrorKind::config_validation, std::string("'") + key + "' must be a string");
  return j[key].get<std::string>();
}

inline std::vector<double> get_vec(const json& j, const char* key) {
  require(j.contains(key), ErrorKind::config_validation, std::string("missing '") + key + "'");
  const json& v = j[key];
  std::vector<double> out;
  if (v.is_number()) return {v.get<double>()};
  require(v.is_array(), ErrorKind::config_validation, std::string("'") + key + "' must be a number or an array of numbers");
  for (const auto& x : v) {
    require(x.is_number(), ErrorKind::config_validation, std::string("'") + key + "' must contain numbers only");
    out.push_back(x.get<double>());
  }
  return out;
}

inline Domain parse_domain(const json& j) {
  check_keys(j, "domain", {"kind", "dim", "lo", "hi", "center", "radius"});
  const std::string kind = get_str(j, "kind", "box");
  if (kind == "box") {
    if (!j.contains("lo") && !j.contains("hi")) return Domain::unit_box(get_int(j, "dim", 1));
    auto lo = get_vec(j, "lo"), hi = get_vec(j, "hi");
    require(lo.size() == hi.size(), ErrorKind::config_validation, "domain lo and hi must have equal length");
    return Domain::box(static_cast<int>(lo.size()), lo, hi);
  }
  if (kind == "ball") {
    auto c = get_vec(j, "center");
    return Domain::ball(static_cast<int>(c.size()), c, get_num(j, "radius", 1.0));
  }
  fail(ErrorKind::config_validation, "domain kind must be 'box' or 'ball'");
}

}  // namespace detail

/// Parses and validates a configuration document.
inline ExperimentConfig parse_config(const nlohmann::json& j) {
  using detail::get_int;
  using detail::get_num;
  using detail::get_str;
  detail::check_keys(j, "config", {"experiment", "field", "domain", "grid", "q", "p", "eps", "kappa", "tolerance", "slack",
                                   "fit", "directions", "cube_stride_divisor", "mollifier", "seed", "workers", "output"});
  ExperimentConfig c;
  c.experiment = get_str(j, "experiment", "");
  bool known = false;
  for (const auto& k : experiment_kinds()) known = known || k == c.experiment;
  require(known, ErrorKind::config_validation, "unknown experiment '" + c.experiment + "'");

  if (j.contains("domain")) c.domain = detail::parse_domain(j["domain"]);
  if (j.contains("field")) {
    const auto& f = j["field"];
    detail::check_keys(f, "field", {"name", "params"});
    c.field = get_str(f, "name", c.field);
    if (f.contains("params")) {
      require(f["params"].is_object(), ErrorKind::config_validation, "field params must be an object");
      for (auto it = f["params"].begin(); it != f["params"].end(); ++it)
        c.params[it.key()] = detail::get_vec(f["params"], it.key().c_str());
    }
  }
  if (j.contains("grid")) {
    detail::check_keys(j["grid"], "grid", {"n"});
    c.n = get_int(j["grid"], "n", c.n);
  }
  require(c.n >= 4, ErrorKind::config_validation, "grid n must be at least 4");
  c.q = get_num(j, "q", c.q);
  c.p = get_num(j, "p", c.p);
  require(c.q >= 1.0, ErrorKind::config_validation, "q must be at least 1");
  if (j.contains("eps")) {
    const auto& e = j["eps"];
    detail::check_keys(e, "eps", {"start", "unit", "ratio", "count"});
    c.eps_start = get_num(e, "start", c.eps_start);
    const std::string unit = get_str(e, "unit", "h");
    require(unit == "h" || unit == "domain", ErrorKind::config_validation, "eps unit must be 'h' or 'domain'");
    c.eps_in_h = unit == "h";
    c.eps_ratio = get_num(e, "ratio", c.eps_ratio);
    c.eps_count = get_int(e, "count", c.eps_count);
  }
  require(c.eps_start > 0.0, ErrorKind::config_validation, "eps start must be positive");
  require(c.eps_ratio > 0.0 && c.eps_ratio < 1.0, ErrorKind::config_validation, "eps ratio must lie in (0, 1)");
  require(c.eps_count >= 1 && c.eps_count <= 64, ErrorKind::config_validation, "eps count must lie in [1, 64]");
  c.kappa = get_num(j, "kappa", c.kappa);
  require(c.kappa > 0.0, ErrorKind::config_validation, "kappa must be positive");
  c.tolerance = get_num(j, "tolerance", c.tolerance);
  c.slack = get_num(j, "slack", c.slack);
  require(c.tolerance >= 0.0 && c.slack >= 0.0, ErrorKind::config_validation, "tolerance and slack must be non-negative");
  const std::string fit = get_str(j, "fit", "linear");
  require(fit == "linear" || fit == "constant", ErrorKind::config_validation, "fit must be 'linear' or 'constant'");
  c.fit = fit == "linear" ? FitModel::linear : FitModel::constant;
  c.directions = get_int(j, "directions", c.directions);
  require(c.directions >= 0, ErrorKind::config_validation, "directions must be non-negative");
  c.cube_stride_divisor = get_int(j, "cube_stride_divisor", c.cube_stride_divisor);
  require(c.cube_stride_divisor >= 1, ErrorKind::config_validation, "cube_stride_divisor must be positive");
  if (j.contains("mollifier")) {
    const auto& m = j["mollifier"];
    detail::check_keys(m, "mollifier", {"profile", "k", "resolution"});
    try {
      c.profile = parse_profile(get_str(m, "profile", to_string(c.profile)));
    } catch (const Error& e) {
      fail(ErrorKind::config_validation, e.what());
    }
    c.mollifier_k = get_int(m, "k", c.mollifier_k);
    c.mollifier_resolution = get_int(m, "resolution", c.mollifier_resolution);
  }
  if (j.contains("seed")) {
    require(j["seed"].is_number_unsigned(), ErrorKind::config_validation, "seed must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("workers")) {
    require(j["workers"].is_number_unsigned(), ErrorKind::config_validation, "workers must be a non-negative integer");
    c.workers = j["workers"].get<unsigned>();
  }
  if (j.contains("output")) {
    detail::check_keys(j["output"], "output", {"dir"});
    c.output_dir = get_str(j["output"], "dir", c.output_dir);
  }
  // seeded catalog kinds take the run seed unless the field fixes its own
  if ((c.field == "hoelder" || c.field == "piecewise-constant-multi") && !c.params.count("seed"))
    c.params["seed"] = {static_cast<double>(c.seed)};
  return c;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::config_parse, std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ExperimentConfig load_config(const std::filesystem::path& path) { return parse_config_text(read_file(path)); }

/// Echo of the resolved configuration.
inline nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["experiment"] = c.experiment;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  j["field"] = {{"name", c.field}, {"params", params}};
  nlohmann::json d;
  d["kind"] = c.domain.kind == Domain::Kind::box ? "box" : "ball";
  if (c.domain.kind == Domain::Kind::box) {
    d["lo"] = std::vector<double>(c.domain.lo.begin(), c.domain.lo.begin() + c.domain.dim);
    d["hi"] = std::vector<double>(c.domain.hi.begin(), c.domain.hi.begin() + c.domain.dim);
  } else {
    d["center"] = std::vector<double>(c.domain.center.begin(), c.domain.center.begin() + c.domain.dim);
    d["radius"] = c.domain.radius;
  }
  j["domain"] = d;
  j["grid"] = {{"n", c.n}};
  j["q"] = c.q;
  j["p"] = c.p;
  j["eps"] = {{"start", c.eps_start}, {"unit", c.eps_in_h ? "h" : "domain"}, {"ratio", c.eps_ratio}, {"count", c.eps_count}};
  j["kappa"] = c.kappa;
  j["tolerance"] = c.tolerance;
  j["slack"] = c.slack;
  j["fit"] = to_string(c.fit);
  j["directions"] = c.directions;
  j["cube_stride_divisor"] = c.cube_stride_divisor;
  j["mollifier"] = {{"profile", to_string(c.profile)}, {"k", c.mollifier_k}, {"resolution", c.mollifier_resolution}};
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["output"] = {{"dir", c.output_dir}};
  return j;
}

inline nlohmann::json to_json(const ComparisonReport& r) {
  nlohmann::json d = nlohmann::json::object();
  for (const auto& [k, v] : r.details) d[k] = v;
  return {{"name", r.name},         {"lhs", r.lhs},   {"rhs", r.rhs},           {"relation", to_string(r.relation)},
          {"tolerance", r.tolerance}, {"pass", r.pass}, {"hard", r.hard},         {"citation", r.citation},
          {"note", r.note},         {"details", d}};
}

/// Everything an experiment produces before it is written to disk.
struct RunOutput {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<ComparisonReport> reports;
  std::vector<std::pair<std::string, double>> summary;

  bool hard_failure() const {
    for (const auto& r : reports)
      if (r.hard && !r.pass) return true;
    return false;
  }
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string csv_text(const RunOutput& out) {
  std::string s;
  for (std::size_t i = 0; i < out.columns.size(); ++i) s += (i ? "," : "") + out.columns[i];
  s += '\n';
  for (const auto& row : out.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_double(row[i]);
    s += '\n';
  }
  return s;
}

/// First two columns as whitespace-separated text.
inline std::string plot_text(const RunOutput& out) {
  std::string s = "# " + out.columns.at(0) + " " + out.columns.at(1) + "\n";
  for (const auto& row : out.rows) s += format_double(row[0]) + " " + format_double(row[1]) + "\n";
  return s;
}

namespace detail {

inline void add_sweep_rows(RunOutput& out, const EpsSweep& s) {
  out.columns = {"eps", "value"};
  for (std::size_t i = 0; i < s.eps.size(); ++i) out.rows.push_back({s.eps[i], s.values[i]});
  out.summary.emplace_back("limit", s.limit);
  out.summary.emplace_back("fit_residual", s.residual);
  out.summary.emplace_back("non_monotone", s.non_monotone ? 1.0 : 0.0);
}

inline RunOutput run_constants() {
  RunOutput out;
  out.columns = {"N", "quadrature", "closed_form"};
  for (int N = 1; N <= 3; ++N) {
    const double qv = dimensional_constant(N), cf = dimensional_constant_closed_form(N);
    out.rows.push_back({static_cast<double>(N), qv, cf});
    auto r = make_report("constant-C" + std::to_string(N), qv, cf, Relation::equal_within, 1e-10, true,
                         "dimensional constant C_N = (1/N) int_{S^{N-1}} |z_1| = (2/N) pi^{(N-1)/2} / Gamma((N+1)/2)");
    r.detail("N", N);
    out.reports.push_back(r);
  }
  return out;
}

}  // namespace detail

/// Runs one experiment in memory.
inline RunOutput run_experiment(const ExperimentConfig& c) {
  if (c.experiment == "constants") return detail::run_constants();

  auto field = make_field(c.field, c.domain, c.params);
  const DomainMask mask = DomainMask::of_domain(c.domain, c.n);
  const auto eps = c.eps_ladder();
  validate_ladder(eps);
  const KernelOptions opt = c.kernel();
  for (double e : eps) check_regime(mask.grid(), e, opt);
  SweepConfig sc{eps, c.fit, opt, c.tolerance, c.directions};
  RunOutput out;

  if (c.experiment == "bbm-sweep") {
    auto u = sample_analytic(*field, mask);
    detail::add_sweep_rows(out, bbm_sweep(u, c.q, eps, c.fit, opt));
  } else if (c.experiment == "jump-verify") {
    auto r = verify_jump_formula(*field, mask, c.q, sc);
    detail::add_sweep_rows(out, r.sweep);
    out.reports.push_back(r.report);
  } else if (c.experiment == "q1-bv") {
    auto r = verify_q1_full_bv(*field, mask, sc);
    detail::add_sweep_rows(out, r.sweep);
    out.reports.push_back(r.report);
  } else if (c.experiment == "two-sided") {
    auto u = sample_analytic(*field, mask);
    out.columns = {"eps", "value", "a_middle", "b_inner"};
    for (double e : eps) {
      auto t = verify_two_sided(u, c.q, e, c.directions, opt);
      out.rows.push_back({e, t.a_inner, t.a_middle, t.b_inner});
      out.reports.push_back(t.left);
      out.reports.push_back(t.right);
    }
  } else if (c.experiment == "besov") {
    auto u = sample_analytic(*field, mask);
    const int N = mask.dim();
    out.columns = {"eps", "value", "a_middle"};
    double sup_b = 0.0, sup_a = 0.0, besov = 0.0;
    for (double e : eps) {
      auto t = verify_two_sided(u, c.q, e, c.directions, opt);
      const double b = directional_sup(u, c.q, e, c.directions, opt).value;
      out.rows.push_back({e, b, t.a_middle});
      sup_b = std::max(sup_b, t.b_inner);
      sup_a = std::max(sup_a, t.a_middle);
      besov = std::max(besov, b);
    }
    auto r = make_report("besov-bound", sup_b, std::pow(2.0, N + c.q) * sup_a / unit_ball_volume(N), Relation::leq, 0.0, true,
                         "Besov seminorm controlled by the BBM functional: sup B(Omega_1) <= 2^{N+q} sup A(Omega_2)/|B_1|");
    r.detail("besov_seminorm_pow", besov).detail("q", c.q);
    out.reports.push_back(r);
    out.summary.emplace_back("besov_seminorm_pow", besov);
  } else if (c.experiment == "gagliardo") {
    auto u = sample_analytic(*field, mask);
    auto reps = check_gagliardo_bound(u, c.q, eps, opt);
    auto sweep = bbm_sweep(u, c.q, eps, c.fit, opt);
    out.columns = {"eps", "value", "gagliardo"};
    for (std::size_t i = 0; i < eps.size(); ++i) out.rows.push_back({eps[i], sweep.values[i], reps[i].rhs});
    out.reports = reps;
    out.summary.emplace_back("limit", sweep.limit);
  } else if (c.experiment == "vq") {
    require(mask.dim() == 1, ErrorKind::dimension_mismatch, "the vq experiment needs a one-dimensional domain");
    require(mask.is_full(), ErrorKind::config_validation, "the vq experiment needs a box domain");
    auto u = sample_analytic(*field, mask);
    std::vector<double> x(mask.grid().size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = mask.grid().point(i)[0];
    Signal1D s(std::move(x), u.codim(), u.values());
    auto r = check_vq_embedding(s, c.q, sc);
    detail::add_sweep_rows(out, r.sweep);
    out.reports.push_back(r.report);
  } else if (c.experiment == "b-space") {
    auto u = sample_analytic(*field, mask);
    out.columns = {"eps", "value", "rhs", "cubes"};
    for (double e : eps) {
      auto r = check_b_bound(u, c.q, e, opt, c.cube_stride_divisor);
      out.rows.push_back({r.details.at(0).second, r.lhs, r.rhs, r.details.at(1).second});
      out.reports.push_back(r);
    }
  } else if (c.experiment == "ag-upper" || c.experiment == "ag-chain") {
    Mollifier eta(c.profile, c.mollifier_k, mask.dim(), c.mollifier_resolution);
    AgConfig ac{sc, c.slack, 0.0};
    const bool chain = c.experiment == "ag-chain";
    auto r = chain ? check_ag_chain(*field, mask, eta, ac) : check_ag_upper_bound(*field, mask, eta, c.q, c.p, ac);
    out.columns = {"eps", "value", "hessian_term", "eikonal_term", "a_grad", "rhs"};
    if (chain) out.columns.push_back("young");
    for (const auto& row : r.rows) {
      out.rows.push_back({row.eps, row.energy.total(), row.energy.hessian, row.energy.eikonal, row.a_q, row.rhs});
      if (chain) out.rows.back().push_back(row.young);
    }
    out.reports = r.reports;
    out.summary.emplace_back("D_eta", eta.d_eta());
    out.summary.emplace_back("a_grad_limit", r.grad_sweep.limit);
  }
  return out;
}

/// Writes manifest.json, sweep.csv, report.json and plot.dat into `dir`.
inline void write_artifacts(const ExperimentConfig& c, const RunOutput& out, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, ErrorKind::io, "cannot create output directory '" + dir.string() + "'");
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream f(dir / name, std::ios::binary);
    require(static_cast<bool>(f), ErrorKind::io, "cannot write '" + (dir / name).string() + "'");
    f << text;
    require(static_cast<bool>(f), ErrorKind::io, "write to '" + (dir / name).string() + "' failed");
  };
  nlohmann::json manifest;
  manifest["tool"] = "bbmlab";
  manifest["version"] = kVersion;
  manifest["compiler"] = __VERSION__;
  manifest["cxx_standard"] = static_cast<long>(__cplusplus);
  manifest["seed"] = c.seed;
  manifest["config"] = to_json(c);
  write("manifest.json", manifest.dump(2) + "\n");
  write("sweep.csv", csv_text(out));
  write("plot.dat", plot_text(out));

  nlohmann::json rep;
  rep["experiment"] = c.experiment;
  std::size_t hard = 0, soft = 0;
  rep["reports"] = nlohmann::json::array();
  for (const auto& r : out.reports) {
    rep["reports"].push_back(to_json(r));
    if (!r.pass) ++(r.hard ? hard : soft);
  }
  rep["hard_failures"] = hard;
  rep["soft_failures"] = soft;
  rep["pass"] = hard == 0 && soft == 0;
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& [k, v] : out.summary) summary[k] = v;
  rep["summary"] = summary;
  write("report.json", rep.dump(2) + "\n");
}

/// Verdict for one report.json.
struct ReportVerdict {
  std::string source;
  std::string experiment;
  std::size_t total = 0;
  std::vector<ComparisonReport> failed;  // name, hard and citation are filled
  bool pass() const { return failed.empty(); }
};

inline ReportVerdict read_verdict(const std::filesystem::path& path) {
  std::filesystem::path file = std::filesystem::is_directory(path) ? path / "report.json" : path;
  require(std::filesystem::exists(file), ErrorKind::io, "missing report '" + file.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(file));
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::config_parse, "corrupt report '" + file.string() + "': " + e.what());
  }
  require(j.is_object() && j.contains("experiment") && j.contains("reports") && j["reports"].is_array(),
          ErrorKind::config_parse, "corrupt report '" + file.string() + "': missing experiment or reports");
  ReportVerdict v;
  v.source = file.string();
  v.experiment = j["experiment"].get<std::string>();
  for (const auto& r : j["reports"]) {
    require(r.contains("pass") && r["pass"].is_boolean(), ErrorKind::config_parse,
            "corrupt report '" + file.string() + "': entry without verdict");
    ++v.total;
    if (!r["pass"].get<bool>()) {
      ComparisonReport f;
      f.name = r.value("name", "");
      f.hard = r.value("hard", false);
      f.citation = r.value("citation", "");
      v.failed.push_back(f);
    }
  }
  return v;
}

}  // namespace bbmlab
