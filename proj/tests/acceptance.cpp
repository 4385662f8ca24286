// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "bbmlab/bbmlab.hpp"
#include "bbmlab/runner.hpp"
#include "oracles.hpp"

using namespace bbmlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a) {
  char b[128];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

std::string fmt2(const char* f, double a, double b) {
  char s[160];
  std::snprintf(s, sizeof s, f, a, b);
  return s;
}

std::vector<double> ladder(double h, double start, double ratio, int count) {
  std::vector<double> e;
  for (int i = 0; i < count; ++i) e.push_back(start * h * std::pow(ratio, i));
  return e;
}

// Every catalog kind in each dimension it supports, with default parameters.
std::vector<std::pair<std::string, Domain>> catalog_cases() {
  std::vector<std::pair<std::string, Domain>> out;
  for (int N : {1, 2})
    for (const auto& info : field_catalog()) {
      Domain d = Domain::unit_box(N);
      try {
        make_field(info.name, d);
      } catch (const Error&) {
        continue;  // kind not defined in this dimension
      }
      out.emplace_back(info.name, d);
    }
  return out;
}

Outcome c1_constants() {
  auto t0 = Clock::now();
  Outcome o;
  const double expect[3] = {2.0, 2.0, 2.0 * std::numbers::pi / 3.0};
  double worst = 0.0;
  for (int N = 1; N <= 3; ++N) {
    const double q = dimensional_constant(N), c = dimensional_constant_closed_form(N);
    worst = std::max({worst, std::abs(q - c) / c, std::abs(q - expect[N - 1]) / expect[N - 1]});
  }
  const double t = seconds_since(t0);
  o.pass = worst <= 1e-10 && t < 1.0;
  o.detail = fmt2("max rel. deviation %.2e, %.3f s", worst, t);
  return o;
}

Outcome c2_step_1d() {
  auto t0 = Clock::now();
  Outcome o;
  auto d = Domain::unit_box(1);
  auto m = DomainMask::of_domain(d, 8192);
  auto f = make_field("step-1d", d, {{"at", {0.5003}}});
  SweepConfig cfg{ladder(m.grid().h, 256, 0.5, 4), FitModel::linear, {}, 0.02, 0};
  double worst_pt = 0.0, worst_lim = 0.0;
  for (double q : {2.0, 3.0}) {
    auto r = verify_jump_formula(*f, m, q, cfg);
    for (double v : r.sweep.values) worst_pt = std::max(worst_pt, std::abs(v - 2.0) / 2.0);
    worst_lim = std::max(worst_lim, std::abs(r.sweep.limit - 2.0) / 2.0);
    o.pass = o.pass && r.report.pass;
  }
  const double t = seconds_since(t0);
  o.pass = o.pass && worst_pt <= 0.03 && worst_lim <= 0.02 && t < 10.0;
  o.detail = fmt2("max sweep dev %.2e, limit dev %.2e", worst_pt, worst_lim) + fmt(", %.2f s", t);
  return o;
}

Outcome c3_half_plane_2d() {
  auto t0 = Clock::now();
  Outcome o;
  auto d = Domain::unit_box(2);
  auto m = DomainMask::of_domain(d, 512);
  auto f = make_field("half-plane-indicator", d, {{"normal", {1.0, 0.0}}, {"offset", {0.50013}}});
  SweepConfig cfg{ladder(m.grid().h, 96, 0.75, 4), FitModel::linear, {}, 0.05, 0};
  auto r = verify_jump_formula(*f, m, 2.0, cfg);
  const double t = seconds_since(t0);
  o.pass = r.report.pass && std::abs(r.sweep.limit - 2.0) <= 0.05 * 2.0 && t < 120.0;
  o.detail = fmt2("extrapolated %.5f vs 2, %.2f s", r.sweep.limit, t);
  return o;
}

Outcome c4_indicator_q_independence() {
  Outcome o;
  double worst = 0.0;
  int fields = 0;
  for (const auto& [name, d] : catalog_cases()) {
    auto f = make_field(name, d);
    if (!f->is_indicator() && name != "step-1d") continue;
    auto m = DomainMask::of_domain(d, d.dim == 1 ? 2048 : 128);
    auto u = sample_analytic(*f, m);
    for (double eps : {16 * m.grid().h, 11.5 * m.grid().h}) {
      const double a1 = bbm_value(u, 1.0, eps);
      for (double q : {1.5, 2.0, 3.0}) worst = std::max(worst, std::abs(bbm_value(u, q, eps) - a1) / a1);
    }
    ++fields;
  }
  o.pass = worst <= 1e-12 && fields >= 4;
  o.detail = fmt2("%g indicator fields, max rel. spread %.2e", fields, worst);
  return o;
}

Outcome c5_q1_sine() {
  Outcome o;
  auto d = Domain::unit_box(1);
  auto m = DomainMask::of_domain(d, 8192);
  auto f = make_field("sine", d);
  SweepConfig cfg{ladder(m.grid().h, 256, 0.5, 4), FitModel::linear, {}, 0.03, 0};
  auto r = verify_q1_full_bv(*f, m, cfg);
  o.pass = r.report.pass && std::abs(r.sweep.limit - 4.0) <= 0.03 * 4.0;
  o.detail = fmt("extrapolated %.5f vs 4", r.sweep.limit);
  return o;
}

Outcome c6_hoelder_trend() {
  Outcome o;
  auto d = Domain::unit_box(1);
  auto m = DomainMask::of_domain(d, 16384);
  auto f = make_field("hoelder", d, {{"s", {0.75}}, {"seed", {1.0}}});
  auto u = sample_analytic(*f, m);
  const auto eps = ladder(m.grid().h, 1024, 0.5, 8);
  auto s = bbm_sweep(u, 2.0, eps, FitModel::linear);
  const double drop = s.values.front() / s.values.back();
  const double frac = s.limit / s.values.front();
  bool gag = true;
  for (const auto& r : check_gagliardo_bound(u, 2.0, eps)) gag = gag && r.pass;
  o.pass = drop >= 2.0 && frac <= 0.10 && gag;
  o.detail = fmt2("decrease x%.2f, intercept/first %.3f", drop, frac) + (gag ? ", Gagliardo bound exact" : ", Gagliardo bound FAILED");
  return o;
}

Outcome c7_two_sided() {
  Outcome o;
  int checks = 0, fails = 0;
  for (const auto& [name, d] : catalog_cases()) {
    auto m = DomainMask::of_domain(d, d.dim == 1 ? 1024 : 128);
    auto u = sample_analytic(*make_field(name, d), m);
    const auto eps = d.dim == 1 ? ladder(m.grid().h, 64, 0.5, 3) : ladder(m.grid().h, 16, 0.75, 3);
    for (double q : {1.0, 2.0})
      for (double e : eps) {
        auto r = verify_two_sided(u, q, e);
        checks += 2;
        fails += !r.left.pass + !r.right.pass;
        if (!r.left.pass || !r.right.pass) std::fprintf(stderr, "  two-sided failure: %s N=%d q=%g eps=%g\n", name.c_str(), d.dim, q, e);
      }
  }
  {
    auto d = Domain::unit_box(3);
    auto m = DomainMask::of_domain(d, 48);
    auto u = sample_analytic(*make_field("ball-indicator", d, {{"center", {0.5, 0.5, 0.5}}, {"radius", {0.3}}}), m);
    for (double q : {1.0, 2.0}) {
      auto r = verify_two_sided(u, q, 8 * m.grid().h);
      checks += 2;
      fails += !r.left.pass + !r.right.pass;
      if (!r.left.pass || !r.right.pass) std::fprintf(stderr, "  two-sided failure: 3D ball q=%g\n", q);
    }
  }
  o.pass = fails == 0 && checks > 0;
  o.detail = fmt2("%g exact checks (1D, 2D, 3D), %g failures", checks, fails);
  return o;
}

Outcome c8_monotonicity_and_splitting() {
  Outcome o;
  std::mt19937_64 rng(8);
  int fails = 0;
  for (int i = 0; i < 50; ++i) {
    const int N = 1 + i % 2;
    auto d = Domain::unit_box(N);
    auto m = DomainMask::of_domain(d, N == 1 ? 512 : 48);
    const double codim = 1 + static_cast<int>(rng() % 3), pieces = 2 + static_cast<int>(rng() % 4);
    auto f = make_field("piecewise-constant-multi", d,
                        {{"codim", {codim}}, {"pieces", {pieces}}, {"seed", {static_cast<double>(1000 + i)}}});
    auto u = sample_analytic(*f, m);
    const double q1 = 1.0 + 0.5 * (rng() % 3), q2 = q1 + 0.5 + 0.5 * (rng() % 3);
    fails += !check_q_monotonicity(u, q1, q2, 8 * m.grid().h).pass;
    auto shift = [&](int lim) {
      std::array<int, 3> v{0, 0, 0};
      do {
        for (int a = 0; a < N; ++a) v[a] = static_cast<int>(rng() % (2 * lim + 1)) - lim;
      } while (v == std::array<int, 3>{0, 0, 0});
      return v;
    };
    auto h1 = shift(5), h2 = shift(5);
    if (h1[0] + h2[0] == 0 && h1[1] + h2[1] == 0) h2[0] += 1;
    fails += !check_splitting(u, q2, h1, h2).pass;
  }
  o.pass = fails == 0;
  o.detail = fmt("50 fields, 100 exact checks, %g failures", fails);
  return o;
}

Outcome c9_vq_embedding() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  int fails = 0;
  const std::size_t n = 256;
  const double h = 1.0 / n;
  SweepConfig cfg{ladder(h, 32, 0.5, 3), FitModel::constant, {}, 0.05, 0};
  for (int i = 0; i < 100; ++i) {
    const std::size_t run = 8 + rng() % 60;
    std::vector<double> v(n);
    double level = U(rng);
    for (std::size_t k = 0; k < n; ++k) {
      if (k % run == 0) level = U(rng);
      v[k] = level;
    }
    const double q = 1.0 + 0.5 * (rng() % 5);
    fails += !check_vq_embedding(Signal1D::uniform(0.0, 1.0, v), q, cfg).report.pass;
  }
  int dp_fails = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t m = 2 + i % 13;
    std::vector<double> v(m);
    for (auto& x : v) x = U(rng);
    const double q = 1.0 + 0.25 * (i % 9);
    const double ref = oracle::q_variation_exhaustive(v, q);
    dp_fails += std::abs(q_variation_pow(Signal1D::uniform(0.0, 1.0, v), q) - ref) > 1e-12 * std::max(1.0, ref);
  }
  o.pass = fails == 0 && dp_fails == 0;
  o.detail = fmt2("embedding failures %g/100, DP mismatches %g/200 (n <= 14)", fails, dp_fails);
  return o;
}

Outcome c10_b_space() {
  Outcome o;
  int checks = 0, fails = 0;
  for (const auto& [name, d] : catalog_cases()) {
    auto m = DomainMask::of_domain(d, d.dim == 1 ? 1024 : 64);
    auto u = sample_analytic(*make_field(name, d), m);
    for (double k : {8.0, 16.0})
      for (double q : {1.0, 2.0}) {
        ++checks;
        fails += !check_b_bound(u, q, k * m.grid().h).pass;
      }
  }
  auto d = Domain::unit_box(1);
  auto m = DomainMask::of_domain(d, 2048);
  auto u = sample_analytic(*make_field("step-1d", d, {{"at", {0.5003}}}), m);
  const double step = cube_functional(u, 64 * m.grid().h, PackingStrategy::greedy, {}).value;
  o.pass = fails == 0 && checks > 0 && std::abs(step - 0.5) <= 0.02 * 0.5;
  o.detail = fmt2("%g exact checks, %g failures", checks, fails) + fmt(", 1D step cube value %.5f", step);
  return o;
}

Outcome c11_pyramid_chain() {
  auto t0 = Clock::now();
  Outcome o;
  auto d = Domain::unit_box(2);
  auto m = DomainMask::of_domain(d, 256);
  auto f = make_field("pyramid-eikonal", d);
  Mollifier eta(MollifierProfile::polynomial_bump, 2, 2, 64);
  AgConfig cfg;
  cfg.sweep.eps = ladder(m.grid().h, 32, 0.75, 4);
  cfg.slack = 0.10;
  cfg.sweep.tolerance = 0.05;
  auto r = check_ag_chain(*f, m, eta, cfg);
  int young = 0, bound = 0, gamma = 0, young_ok = 0, bound_ok = 0, gamma_ok = 0;
  double gamma_lhs = 0.0, gamma_rhs = 0.0;
  for (const auto& rep : r.reports) {
    if (rep.name == "ag-chain-young") ++young, young_ok += rep.pass;
    if (rep.name == "ag-chain-bound") ++bound, bound_ok += rep.pass;
    if (rep.name == "gamma-limit") ++gamma, gamma_ok += rep.pass, gamma_lhs = rep.lhs, gamma_rhs = rep.rhs;
  }
  o.pass = young == 4 && young_ok == 4 && bound == 2 && bound_ok == 2 && gamma == 1 && gamma_ok == 1;
  o.detail = fmt2("Young %g/4 exact, bound %g/2", young_ok, bound_ok) + fmt2(", gamma %.4f vs %.4f", gamma_lhs, gamma_rhs) +
             fmt(", %.1f s", seconds_since(t0));
  return o;
}

Outcome c12_determinism() {
  Outcome o;
  const unsigned many = std::max(8u, std::thread::hardware_concurrency());
  const std::vector<std::string> configs = {
      R"({"experiment": "constants"})",
      R"({"experiment": "bbm-sweep", "field": {"name": "ball-indicator"}, "domain": {"dim": 2}, "grid": {"n": 96},
          "eps": {"start": 16, "ratio": 0.75, "count": 3}})",
      R"({"experiment": "jump-verify", "field": {"name": "half-plane-indicator", "params": {"normal": [0.6, 0.8]}},
          "domain": {"dim": 2}, "grid": {"n": 128}, "eps": {"start": 24, "ratio": 0.75, "count": 3}})",
      R"({"experiment": "q1-bv", "field": {"name": "sine"}, "grid": {"n": 2048}, "q": 1,
          "eps": {"start": 64, "ratio": 0.5, "count": 3}})",
      R"({"experiment": "two-sided", "field": {"name": "cone-eikonal"}, "domain": {"dim": 2}, "grid": {"n": 64},
          "eps": {"start": 12, "ratio": 0.75, "count": 2}})",
      R"({"experiment": "besov", "field": {"name": "polygon-indicator"}, "domain": {"dim": 2}, "grid": {"n": 64},
          "eps": {"start": 12, "ratio": 0.75, "count": 2}})",
      R"({"experiment": "gagliardo", "field": {"name": "hoelder"}, "grid": {"n": 1024},
          "eps": {"start": 64, "ratio": 0.5, "count": 3}})",
      R"({"experiment": "vq", "field": {"name": "piecewise-constant-multi", "params": {"codim": 2}}, "grid": {"n": 256},
          "eps": {"start": 32, "ratio": 0.5, "count": 3}})",
      R"({"experiment": "b-space", "field": {"name": "ball-indicator"}, "domain": {"dim": 2}, "grid": {"n": 64},
          "eps": {"start": 16, "ratio": 0.5, "count": 2}})",
      R"({"experiment": "ag-upper", "field": {"name": "zigzag-eikonal"}, "grid": {"n": 1024}, "q": 3, "p": 4,
          "eps": {"start": 32, "ratio": 0.5, "count": 3}})",
      R"({"experiment": "ag-chain", "field": {"name": "pyramid-eikonal"}, "domain": {"dim": 2}, "grid": {"n": 64},
          "eps": {"start": 16, "ratio": 0.75, "count": 3}})",
  };
  int diffs = 0;
  for (const auto& text : configs) {
    auto c = parse_config_text(text);
    c.workers = 1;
    auto a = csv_text(run_experiment(c));
    c.workers = many;
    auto b = csv_text(run_experiment(c));
    if (a != b) {
      ++diffs;
      std::fprintf(stderr, "  CSV differs for %s\n", c.experiment.c_str());
    }
  }
  o.pass = diffs == 0;
  o.detail = fmt2("%g experiment kinds, workers 1 vs %g", static_cast<double>(configs.size()), many) +
             (diffs ? ", CSV differs" : ", CSV bit-identical");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1  dimensional constants", c1_constants},
      {"C2  jump energy, 1D step", c2_step_1d},
      {"C3  jump energy, 2D half-plane", c3_half_plane_2d},
      {"C4  indicator q-independence", c4_indicator_q_independence},
      {"C5  q = 1 total variation", c5_q1_sine},
      {"C6  Hoelder field vanishing trend", c6_hoelder_trend},
      {"C7  two-sided A-B inequality", c7_two_sided},
      {"C8  q-monotonicity and splitting", c8_monotonicity_and_splitting},
      {"C9  q-variation embedding", c9_vq_embedding},
      {"C10 cube functional bound", c10_b_space},
      {"C11 mollified energy chain", c11_pyramid_chain},
      {"C12 worker-count determinism", c12_determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("[%s] %-36s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
