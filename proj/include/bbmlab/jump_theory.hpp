#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bbmlab/bbm_kernels.hpp"
#include "bbmlab/catalog.hpp"
#include "bbmlab/error.hpp"
#include "bbmlab/jump_spec.hpp"
#include "bbmlab/quadrature.hpp"
#include "bbmlab/report.hpp"

namespace bbmlab {

/// (2/N) pi^{(N-1)/2} / Gamma((N+1)/2).
inline double dimensional_constant_closed_form(int N) {
  require(N >= 1 && N <= 3, ErrorKind::unsupported, "dimensional constant is available for N = 1, 2, 3");
  return (2.0 / N) * std::pow(std::numbers::pi, 0.5 * (N - 1)) / std::tgamma(0.5 * (N + 1));
}

/// C_N = (1/N) int_{S^{N-1}} |z_1| dH^{N-1}, by quadrature on the sphere.
inline double dimensional_constant(int N) {
  require(N >= 1 && N <= 3, ErrorKind::unsupported, "dimensional constant is available for N = 1, 2, 3");
  const GaussRule rule = gauss_legendre(20);
  const double pi = std::numbers::pi;
  double value = 0.0;
  if (N == 1) {
    value = std::abs(1.0) + std::abs(-1.0);
  } else if (N == 2) {
    // |cos| is smooth between its kinks at pi/2 and 3pi/2
    value = 0.5 * integrate_panels([](double t) { return std::abs(std::cos(t)); }, {0.0, 0.5 * pi, 1.5 * pi, 2.0 * pi}, rule);
  } else {
    value = (1.0 / 3.0) * 2.0 * pi *
            integrate_panels([](double t) { return std::abs(std::cos(t)) * std::sin(t); }, {0.0, 0.5 * pi, pi}, rule);
  }
  const double closed = dimensional_constant_closed_form(N);
  require(std::abs(value - closed) <= 1e-10 * closed, ErrorKind::invalid_argument,
          "sphere quadrature disagrees with the closed form");
  return value;
}

/// C_N * sum over pieces of |u+ - u-|^q * measure.
inline double jump_energy_rhs(const JumpSpec& jump, double q, std::string* warning = nullptr) {
  jump.validate();
  if (jump.empty()) {
    if (warning) *warning = "field has no jumps; right-hand side is 0";
    return 0.0;
  }
  return dimensional_constant(jump.dim) * jump.jump_power_integral(q);
}

/// Settings shared by sweep-based checks.
struct SweepConfig {
  std::vector<double> eps;  // strictly decreasing
  FitModel fit = FitModel::linear;
  KernelOptions kernel{};
  double tolerance = 0.05;
  int directions = 0;  // 0: default 2N + 16
};

struct SweepCheck {
  ComparisonReport report;
  EpsSweep sweep;
};

/// Extrapolated BBM sweep against C_N times the jump energy.
inline SweepCheck verify_jump_formula(const AnalyticField& field, const DomainMask& mask, double q, const SweepConfig& cfg) {
  require(q > 1.0, ErrorKind::invalid_argument, "the jump-energy identity needs q > 1");
  auto u = sample_analytic(field, mask);
  SweepCheck out;
  out.sweep = bbm_sweep(u, q, cfg.eps, cfg.fit, cfg.kernel);
  std::string warn;
  double rhs = jump_energy_rhs(field.jump(), q, &warn);
  out.report = make_report("jump-verify", out.sweep.limit, rhs, Relation::equal_within, cfg.tolerance, false,
                           "jump-energy identity: lim A_hat = C_N int_J |u+ - u-|^q");
  out.report.note = warn;
  out.report.detail("q", q).detail("C_N", dimensional_constant(mask.dim())).detail("fit_residual", out.sweep.residual);
  out.report.detail("non_monotone", out.sweep.non_monotone ? 1.0 : 0.0);
  return out;
}

/// q = 1: the extrapolated sweep against C_N int |grad u| for smooth fields.
inline SweepCheck verify_q1_full_bv(const AnalyticField& field, const DomainMask& mask, const SweepConfig& cfg) {
  auto tv = field.gradient_l1();
  require(tv.has_value(), ErrorKind::unsupported, "field kind '" + field.kind() + "' has no analytic total variation");
  auto u = sample_analytic(field, mask);
  SweepCheck out;
  out.sweep = bbm_sweep(u, 1.0, cfg.eps, cfg.fit, cfg.kernel);
  double rhs = dimensional_constant(mask.dim()) * *tv;
  out.report = make_report("q1-bv", out.sweep.limit, rhs, Relation::equal_within, cfg.tolerance, false,
                           "q = 1 recovers the full BV seminorm: lim A_hat = C_N int |grad u|");
  out.report.detail("total_variation", *tv).detail("fit_residual", out.sweep.residual);
  return out;
}

// ------------------------------------------------------------- W limits

enum class CostKind { power, rational };

struct CostSpec {
  CostKind kind = CostKind::power;
  double q = 2.0;
};

/// (1/t) sum W(u(x + t k), u(x)) h^N over x in the mask eroded by t.
inline double directional_w_limit(const SampledField& u, const CostSpec& w, const std::vector<double>& k, double t,
                                  const KernelOptions& opt = {}) {
  check_regime(u.grid(), t, opt, "t");
  DomainMask inner = erode(u.mask(), t);
  if (w.kind == CostKind::power) {
    require(w.q >= 1.0, ErrorKind::invalid_argument, "power cost needs q >= 1");
    return directional_cost_sum(u, PowerCost{w.q}, t, k, inner, opt.workers);
  }
  return directional_cost_sum(u, RationalCost{}, t, k, inner, opt.workers);
}

/// Right-hand side int_{J} W(u+, u-) |k . nu| dH^{N-1}.
inline double directional_w_rhs(const JumpSpec& jump, const CostSpec& w, const std::vector<double>& k) {
  double s = 0.0;
  for (const auto& p : jump.pieces) {
    double d2 = 0.0;
    for (std::size_t c = 0; c < p.u_plus.size(); ++c) d2 += (p.u_plus[c] - p.u_minus[c]) * (p.u_plus[c] - p.u_minus[c]);
    double W = w.kind == CostKind::power ? std::pow(d2, 0.5 * w.q) : d2 / (1.0 + d2);
    double kn = 0.0;
    for (int a = 0; a < jump.dim; ++a) kn += k[a] * p.normal[a];
    s += W * std::abs(kn) * p.measure;
  }
  return s;
}

// ------------------------------------------------------- exact inequalities

struct TwoSided {
  ComparisonReport left;   // A(Omega_1) / |B_1| <= sup_{rho <= eps} B_rho(Omega_1)
  ComparisonReport right;  // B(Omega_1) <= 2^{N+q} A(Omega_2) / |B_1|
  double a_inner = 0.0, a_middle = 0.0, b_inner = 0.0;
  double b_lattice_sup = 0.0;  // max over lattice offsets |z| h <= eps of the shifted difference
};

/// Nested domains Omega_2 = Omega eroded by eps, Omega_1 = Omega_2 eroded by eps.
/// The lower side is the finite-eps form of a limsup statement: the ball
/// average over scales rho <= eps is bounded by the largest lattice-offset
/// difference quotient, scaled by the lattice ball volume over |B_1|.
inline TwoSided verify_two_sided(const SampledField& u, double q, double eps, int M = 0, const KernelOptions& opt = {}) {
  check_regime(u.grid(), eps, opt);
  DomainMask mid = erode(u.mask(), eps);
  DomainMask in = erode(mid, eps);
  const int N = u.dim();
  const double h = u.grid().h;
  const double ball = unit_ball_volume(N);
  TwoSided r;
  auto t = pair_sums(u, q, in, eps / h, opt.workers);
  r.a_inner = bbm_from_table(t, eps);
  std::size_t count = 0;
  const double hN = detail::ipow(h, N);
  for (std::size_t i = 0; i < t.offsets.size() && t.offsets[i].r * h <= eps; ++i, ++count)
    r.b_lattice_sup = std::max(r.b_lattice_sup, t.sums[i] * hN / (t.offsets[i].r * h));
  const double lattice_ball = static_cast<double>(count) * hN / detail::ipow(eps, N);
  r.a_middle = bbm_value(u, q, eps, opt, &mid);
  r.b_inner = directional_sup(u, q, eps, M, opt, &in).value;
  r.left = make_report("two-sided-left", r.a_inner / ball, lattice_ball / ball * r.b_lattice_sup, Relation::leq, 0.0, true,
                       "A-B equivalence, lower side: A(Omega_1)/|B_1| <= B(Omega_1)");
  r.left.detail("lattice_ball_over_B1", lattice_ball / ball).detail("b_lattice_sup", r.b_lattice_sup).detail("b_inner", r.b_inner);
  r.right = make_report("two-sided-right", r.b_inner, std::pow(2.0, N + q) * r.a_middle / ball, Relation::leq, 0.0, true,
                        "A-B equivalence, upper side: B(Omega_1) <= 2^{N+q} A(Omega_2)/|B_1|");
  for (auto* rep : {&r.left, &r.right}) rep->detail("eps", eps).detail("q", q);
  return r;
}

/// bbm(q2) <= 2^{q2-q1} |u|_inf^{q2-q1} bbm(q1) for q2 > q1.
inline ComparisonReport check_q_monotonicity(const SampledField& u, double q1, double q2, double eps, const KernelOptions& opt = {}) {
  require(q2 > q1 && q1 >= 1.0, ErrorKind::invalid_argument, "q-monotonicity needs q2 > q1 >= 1");
  double a1 = bbm_value(u, q1, eps, opt);
  double a2 = bbm_value(u, q2, eps, opt);
  double f = std::pow(2.0 * u.sup_norm(), q2 - q1);
  auto r = make_report("q-monotonicity", a2, f * a1, Relation::leq, 0.0, true,
                       "q-monotonicity under an L-infinity bound: A_{q2} <= (2|u|_inf)^{q2-q1} A_{q1}");
  r.detail("q1", q1).detail("q2", q2).detail("eps", eps);
  return r;
}

/// Splitting inequality for integer lattice shifts h1, h2 (cell units):
///   D(Omega_1, h1+h2) <= 2^{q-1} (|h2|/|h1+h2| D(Omega_2, h2) + |h1|/|h1+h2| D(Omega_1, h1)),
/// D(K, v) = (1/|v|) sum_{x in K} |u(x+v) - u(x)|^q h^N, with Omega_2 the mask
/// eroded by |h2| and Omega_1 = Omega_2 eroded by |h1|.
inline ComparisonReport check_splitting(const SampledField& u, double q, const std::array<int, 3>& h1, const std::array<int, 3>& h2,
                                        unsigned workers = 0) {
  const Grid& g = u.grid();
  auto len = [&](const std::array<int, 3>& v) {
    double s = 0.0;
    for (int a = 0; a < g.dim; ++a) s += double(v[a]) * v[a];
    return std::sqrt(s) * g.h;
  };
  std::array<int, 3> h12{h1[0] + h2[0], h1[1] + h2[1], h1[2] + h2[2]};
  const double l1 = len(h1), l2 = len(h2), l12 = len(h12);
  require(l1 > 0 && l2 > 0 && l12 > 0, ErrorKind::invalid_argument, "splitting shifts must be nonzero with nonzero sum");
  DomainMask mid = erode(u.mask(), l2);
  DomainMask in = erode(mid, l1);
  auto D = [&](const DomainMask& K, const std::array<int, 3>& v, double l) {
    std::vector<double> k(g.dim);
    for (int a = 0; a < g.dim; ++a) k[a] = v[a] * g.h / l;
    return directional_cost_sum(u, PowerCost{q}, l, k, K, workers);
  };
  double lhs = D(in, h12, l12);
  double rhs = std::pow(2.0, q - 1.0) * (l2 / l12 * D(mid, h2, l2) + l1 / l12 * D(in, h1, l1));
  auto r = make_report("splitting", lhs, rhs, Relation::leq, 0.0, true,
                       "triangle/convexity splitting of a shifted difference");
  r.detail("q", q).detail("|h1|", l1).detail("|h2|", l2);
  return r;
}

/// bbm_value <= gagliardo_seminorm_pow at every eps of the list.
inline std::vector<ComparisonReport> check_gagliardo_bound(const SampledField& u, double q, const std::vector<double>& eps,
                                                           const KernelOptions& opt = {}) {
  double gag = gagliardo_seminorm_pow(u, q, opt);
  std::vector<ComparisonReport> out;
  for (double e : eps) {
    auto r = make_report("gagliardo-bound", bbm_value(u, q, e, opt), gag, Relation::leq, 0.0, true,
                         "Gagliardo domination: A(eps) <= int int |u(x)-u(y)|^q / |x-y|^{N+1}");
    r.detail("eps", e);
    out.push_back(r);
  }
  return out;
}

}  // namespace bbmlab
