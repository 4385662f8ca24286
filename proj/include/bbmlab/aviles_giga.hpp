#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "bbmlab/bbm_kernels.hpp"
#include "bbmlab/catalog.hpp"
#include "bbmlab/error.hpp"
#include "bbmlab/grid.hpp"
#include "bbmlab/jump_theory.hpp"
#include "bbmlab/mollifier.hpp"
#include "bbmlab/parallel.hpp"
#include "bbmlab/report.hpp"

namespace bbmlab {

/// Sharp constant of the pointwise inequality
/// c |H| w <= eps^2 |H|^3 + w^{3/2} / eps  (w = 1 - |grad psi_eps|^2).
inline double young_constant() { return 3.0 / std::cbrt(4.0); }

/// psi_eps, grad psi_eps and eps * Hessian(psi_eps) on the inner mask.
struct MollifiedField {
  DomainMask inner;
  double eps = 0.0;
  int dim = 1;
  std::vector<double> psi;       // one per grid point
  std::vector<double> grad;      // dim per grid point
  std::vector<double> eps_hess;  // dim*dim per grid point, row-major
  Mollifier eta;

  const Grid& grid() const { return inner.grid(); }
  const double* gradient_at(std::size_t i) const { return grad.data() + i * dim; }
  const double* eps_hessian_at(std::size_t i) const { return eps_hess.data() + i * dim * dim; }
};

namespace detail {

struct BallNodes {
  int dim = 1;
  std::vector<double> z;      // dim per node
  std::vector<double> w;      // eta weights, summing to 1
  std::vector<double> gw;     // grad eta weights, dim per node
};

/// Tensor midpoint rule with R points per axis on [-1, 1]^N, restricted to
/// the open unit ball; eta weights are renormalised to unit mass and the
/// gradient weights scaled by the same factor.
inline BallNodes ball_nodes(const Mollifier& eta) {
  const int N = eta.dim(), R = eta.resolution();
  const double step = 2.0 / R;
  BallNodes b;
  b.dim = N;
  std::array<int, 3> ext{1, 1, 1};
  for (int a = 0; a < N; ++a) ext[a] = R;
  double mass = 0.0;
  const double cell = ipow(step, N);
  for (int k = 0; k < ext[2]; ++k)
    for (int j = 0; j < ext[1]; ++j)
      for (int i = 0; i < ext[0]; ++i) {
        double z[3] = {-1.0 + (i + 0.5) * step, -1.0 + (j + 0.5) * step, -1.0 + (k + 0.5) * step};
        double r2 = 0.0;
        for (int a = 0; a < N; ++a) r2 += z[a] * z[a];
        if (r2 >= 1.0) continue;
        double g[3];
        eta.gradient(z, g);
        double w = eta(z) * cell;
        for (int a = 0; a < N; ++a) {
          b.z.push_back(z[a]);
          b.gw.push_back(g[a] * cell);
        }
        b.w.push_back(w);
        mass += w;
      }
  const double alpha = 1.0 / mass;
  for (auto& w : b.w) w *= alpha;
  for (auto& g : b.gw) g *= alpha;
  return b;
}

}  // namespace detail

/// Mollifies an analytic field at scale eps on the mask eroded by
/// max(delta, eps); gradient and Hessian come from convolving the analytic
/// gradient with eta and grad eta.
inline MollifiedField mollify(const AnalyticField& psi, const DomainMask& mask, const Mollifier& eta, double eps,
                              const KernelOptions& opt = {}, double delta = 0.0) {
  check_regime(mask.grid(), eps, opt);
  require(psi.dim() == mask.dim() && eta.dim() == mask.dim(), ErrorKind::dimension_mismatch,
          "field, mask and mollifier dimensions must agree");
  require(psi.codim() == 1 && psi.has_gradient(), ErrorKind::unsupported, "mollify needs a scalar field with an analytic gradient");
  const int N = mask.dim();
  const Grid& g = mask.grid();
  MollifiedField mf{erode(mask, std::max(delta, eps)), eps, N, {}, {}, {}, eta};
  mf.psi.assign(g.size(), 0.0);
  mf.grad.assign(g.size() * N, 0.0);
  mf.eps_hess.assign(g.size() * N * N, 0.0);
  const auto nodes = detail::ball_nodes(eta);
  const std::size_t nn = nodes.w.size();
  const std::size_t rows = static_cast<std::size_t>(g.extents[1]) * g.extents[2];
  parallel_for(rows, opt.workers, [&](std::size_t row) {
    const int j = static_cast<int>(row % g.extents[1]);
    const int k = static_cast<int>(row / g.extents[1]);
    for (int i = 0; i < g.extents[0]; ++i) {
      const std::size_t xi = g.index(i, j, k);
      if (!mf.inner.inside(xi)) continue;
      const Point x = g.point(xi);
      double p = 0.0, gr[3] = {0, 0, 0}, H[9] = {0, 0, 0, 0, 0, 0, 0, 0, 0};
      for (std::size_t n = 0; n < nn; ++n) {
        Point y = x;
        for (int a = 0; a < N; ++a) y[a] += eps * nodes.z[n * N + a];
        double gy[3];
        psi.gradient(y, gy);
        p += nodes.w[n] * psi.value(y);
        for (int a = 0; a < N; ++a) {
          gr[a] += nodes.w[n] * gy[a];
          for (int b = 0; b < N; ++b) H[a * N + b] -= nodes.gw[n * N + b] * gy[a];
        }
      }
      mf.psi[xi] = p;
      for (int a = 0; a < N; ++a) mf.grad[xi * N + a] = gr[a];
      for (int a = 0; a < N * N; ++a) mf.eps_hess[xi * N * N + a] = H[a];
    }
  });
  return mf;
}

namespace detail {

inline double frob(const double* H, int n) {
  double s = 0.0;
  for (int a = 0; a < n * n; ++a) s += H[a] * H[a];
  return std::sqrt(s);
}

inline double eikonal_defect(const double* g, int n) {
  double s = 0.0;
  for (int a = 0; a < n; ++a) s += g[a] * g[a];
  return std::max(0.0, 1.0 - s);
}

/// Row-partitioned sum of f(i) over inner points, reduced in row order.
template <class F>
double inner_sum(const MollifiedField& mf, unsigned workers, F&& f) {
  const Grid& g = mf.grid();
  const std::size_t rows = static_cast<std::size_t>(g.extents[1]) * g.extents[2];
  std::vector<double> part(rows, 0.0);
  parallel_for(rows, workers, [&](std::size_t row) {
    const int j = static_cast<int>(row % g.extents[1]);
    const int k = static_cast<int>(row / g.extents[1]);
    double acc = 0.0;
    for (int i = 0; i < g.extents[0]; ++i) {
      const std::size_t xi = g.index(i, j, k);
      if (mf.inner.inside(xi)) acc += f(xi);
    }
    part[row] = acc;
  });
  double s = 0.0;
  for (double v : part) s += v;
  return s;
}

}  // namespace detail

struct EnergyPair {
  double hessian = 0.0;  // sum eps^{a-1} |Hess psi_eps|^a h^N
  double eikonal = 0.0;  // sum (1/eps) (1 - |grad psi_eps|^2)^b h^N
  double total() const { return hessian + eikonal; }
};

inline EnergyPair energy_terms(const MollifiedField& mf, double hess_exp, double eik_exp, unsigned workers = 0) {
  const int N = mf.dim;
  const double hN = detail::ipow(mf.grid().h, N);
  const double inv = 1.0 / mf.eps;
  EnergyPair e;
  // eps^{a-1} |H|^a = |eps H|^a / eps
  e.hessian = detail::inner_sum(mf, workers, [&](std::size_t i) {
                return std::pow(detail::frob(mf.eps_hessian_at(i), N), hess_exp) * inv;
              }) * hN;
  e.eikonal = detail::inner_sum(mf, workers, [&](std::size_t i) {
                return std::pow(detail::eikonal_defect(mf.gradient_at(i), N), eik_exp) * inv;
              }) * hN;
  return e;
}

/// (int eps^{p-1} |Hess|^p, int (1/eps)(1 - |grad|^2)^{p/(p-1)}).
inline EnergyPair ag_energy(const MollifiedField& mf, double p, unsigned workers = 0) {
  require(p > 1.0, ErrorKind::invalid_argument, "the energy exponent must exceed 1");
  return energy_terms(mf, p, p / (p - 1.0), workers);
}

/// (1/3) int_J |grad psi^+ - grad psi^-|^3 dH^{N-1}.
inline double gamma_limit_value(const JumpSpec& grad_jump) {
  return grad_jump.jump_power_integral(3.0) / 3.0;
}

/// Settings for the mollified-energy checks.
struct AgConfig {
  SweepConfig sweep;
  double slack = 0.10;
  double delta = 0.0;  // inner-domain erosion; 0 means the largest sweep eps
};

struct AgRow {
  double eps = 0.0;
  EnergyPair energy;
  double a_q = 0.0;  // A_{grad psi, q}(Omega_0) at eps
  double a_p = 0.0;  // A_{grad psi, p}(Omega_0) at eps
  double rhs = 0.0;
  double young = 0.0;
  std::size_t young_violations = 0;
};

struct AgResult {
  std::vector<AgRow> rows;
  std::vector<ComparisonReport> reports;
  EpsSweep grad_sweep;  // A_{grad psi, q} sweep on Omega_0
  EpsSweep full_sweep;  // A_{grad psi, 3} sweep on the whole mask (chain only)
};

namespace detail {

inline std::size_t count_young_violations(const MollifiedField& mf, double& young_sum) {
  const int N = mf.dim;
  const double hN = ipow(mf.grid().h, N);
  const double c = young_constant();
  const double e = mf.eps;
  std::size_t bad = 0;
  double s = 0.0;
  for (std::size_t i = 0; i < mf.grid().size(); ++i) {
    if (!mf.inner.inside(i)) continue;
    const double eh = frob(mf.eps_hessian_at(i), N);
    const double w = eikonal_defect(mf.gradient_at(i), N);
    const double lhs = c * (eh / e) * w;
    const double rhs = std::pow(eh, 3.0) / e + std::pow(w, 1.5) / e;
    if (!(lhs <= rhs + kRoundoff * std::max(lhs, rhs))) ++bad;
    s += lhs;
  }
  young_sum = s * hN;
  return bad;
}

}  // namespace detail

/// Energies along the sweep against the eta-moment bound
/// M_q(eta) A_{grad psi, q}(Omega_0) + M_p(eta) A_{grad psi, p}(Omega_0).
inline AgResult check_ag_upper_bound(const AnalyticField& psi, const DomainMask& mask, const Mollifier& eta, double q, double p,
                                     const AgConfig& cfg) {
  require(q > 1.0, ErrorKind::invalid_argument, "the upper bound needs q > 1");
  require(p > 2.0, ErrorKind::unsupported, "p = 2 is unsupported: the value moment exponent p/(p-2) is undefined");
  const auto& eps = cfg.sweep.eps;
  validate_ladder(eps);
  const double delta = cfg.delta > 0.0 ? cfg.delta : eps.front();
  DomainMask inner = erode(mask, delta);
  auto grad = sample_gradient(psi, mask);
  AgResult res;
  res.grad_sweep = bbm_sweep(grad, q, eps, cfg.sweep.fit, cfg.sweep.kernel, &inner);
  EpsSweep sweep_p = p == q ? res.grad_sweep : bbm_sweep(grad, p, eps, cfg.sweep.fit, cfg.sweep.kernel, &inner);
  const double mq = eta.grad_moment(q), mp = eta.val_moment(p);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    auto mf = mollify(psi, mask, eta, eps[i], cfg.sweep.kernel, delta);
    AgRow row;
    row.eps = eps[i];
    row.energy = energy_terms(mf, q, 0.5 * p, cfg.sweep.kernel.workers);
    row.a_q = res.grad_sweep.values[i];
    row.a_p = sweep_p.values[i];
    row.rhs = p == q ? (mq + mp) * row.a_q : mq * row.a_q + mp * row.a_p;
    res.rows.push_back(row);
  }
  const std::size_t n = res.rows.size();
  for (std::size_t i = n >= 2 ? n - 2 : 0; i < n; ++i) {
    auto r = make_report("ag-upper", res.rows[i].energy.total(), res.rows[i].rhs, Relation::leq, cfg.slack, false,
                         "mollified energy upper bound: lim sup I_eps <= M_q A_{grad psi,q} + M_p A_{grad psi,p}");
    r.detail("eps", res.rows[i].eps).detail("q", q).detail("p", p);
    res.reports.push_back(r);
  }
  const double limit_rhs = p == q ? (mq + mp) * res.grad_sweep.limit : mq * res.grad_sweep.limit + mp * sweep_p.limit;
  bool non_increasing = true;
  for (std::size_t i = 1; i < n; ++i)
    non_increasing = non_increasing && res.rows[i].energy.total() <= res.rows[i - 1].energy.total() * (1.0 + 1e-9);
  auto trend = make_report("ag-upper-limit", res.rows.back().energy.total(), limit_rhs, Relation::leq, cfg.slack, false,
                           "mollified energy upper bound against the extrapolated right-hand side");
  trend.detail("non_increasing", non_increasing ? 1.0 : 0.0);
  trend.note = non_increasing ? "energy is non-increasing as eps decreases" : "energy increases somewhere as eps decreases";
  res.reports.push_back(trend);
  return res;
}

/// (3/cbrt 4) int |Hess||1 - |grad|^2| <= I^{(3)}_eps <= D_eta A_{grad psi, 3}.
inline AgResult check_ag_chain(const AnalyticField& psi, const DomainMask& mask, const Mollifier& eta, const AgConfig& cfg) {
  require(mask.dim() == 1 || mask.dim() == 2, ErrorKind::unsupported, "the energy chain is checked for N = 1, 2");
  const auto& eps = cfg.sweep.eps;
  validate_ladder(eps);
  const double delta = cfg.delta > 0.0 ? cfg.delta : eps.front();
  DomainMask inner = erode(mask, delta);
  auto grad = sample_gradient(psi, mask);
  AgResult res;
  res.grad_sweep = bbm_sweep(grad, 3.0, eps, cfg.sweep.fit, cfg.sweep.kernel, &inner);
  const double mq = eta.grad_moment(3.0), mp = eta.val_moment(3.0);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    auto mf = mollify(psi, mask, eta, eps[i], cfg.sweep.kernel, delta);
    AgRow row;
    row.eps = eps[i];
    row.energy = energy_terms(mf, 3.0, 1.5, cfg.sweep.kernel.workers);
    row.a_q = row.a_p = res.grad_sweep.values[i];
    row.rhs = (mq + mp) * row.a_q;
    row.young_violations = detail::count_young_violations(mf, row.young);
    res.rows.push_back(row);
    auto r = make_report("ag-chain-young", row.young, row.energy.total(), Relation::leq, 0.0, true,
                         "pointwise Young step: (3/cbrt 4) |Hess| |1-|grad|^2| <= eps^2 |Hess|^3 + (1/eps)(1-|grad|^2)^{3/2}");
    r.pass = r.pass && row.young_violations == 0;
    r.detail("eps", eps[i]).detail("pointwise_violations", static_cast<double>(row.young_violations));
    res.reports.push_back(r);
  }
  const std::size_t n = res.rows.size();
  for (std::size_t i = n >= 2 ? n - 2 : 0; i < n; ++i) {
    auto r = make_report("ag-chain-bound", res.rows[i].energy.total(), res.rows[i].rhs, Relation::leq, cfg.slack, false,
                         "energy chain upper end: I^{(3)}_eps <= D_eta A_{grad psi,3}");
    r.detail("eps", res.rows[i].eps).detail("D_eta", mq + mp);
    if (res.rows[i].a_q > 0) r.detail("energy_over_A", res.rows[i].energy.total() / res.rows[i].a_q);
    res.reports.push_back(r);
  }
  if (auto gj = psi.gradient_jump()) {
    // the Gamma-limit candidate refers to the whole domain
    res.full_sweep = bbm_sweep(grad, 3.0, eps, cfg.sweep.fit, cfg.sweep.kernel);
    const double a_hat = res.full_sweep.limit;
    const double gamma = gamma_limit_value(*gj);
    const int N = mask.dim();
    auto r = make_report("gamma-limit", gamma, a_hat / (3.0 * dimensional_constant(N)), Relation::equal_within,
                         cfg.sweep.tolerance, false, "jump energy of grad psi: (1/3) int |grad psi^+ - grad psi^-|^3 = A_hat/(3 C_N)");
    r.detail("A_hat_limit", a_hat).detail("over_3C3", a_hat / (3.0 * dimensional_constant(3)));
    res.reports.push_back(r);
  }
  return res;
}

}  // namespace bbmlab
