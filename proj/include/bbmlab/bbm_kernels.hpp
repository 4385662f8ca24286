#pragma once

// Nonlocal functionals on sampled fields.
//
// Pair sums use an offset stencil: for every lattice offset z the quantity
//   S(z) = sum_{x in inner, x+z in outer} |u(x+z) - u(x)|^q
// is computed independently, and functionals are weighted sums of S(z) taken
// in a fixed order (by |z|^2, then lexicographically). That order makes every
// result independent of the worker count, and makes the terms with |z| h <= eps
// a prefix of the terms of any larger radius.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <type_traits>
#include <vector>

#include "bbmlab/error.hpp"
#include "bbmlab/grid.hpp"
#include "bbmlab/parallel.hpp"

namespace bbmlab {

struct KernelOptions {
  double kappa = 8.0;    // smallest admissible eps, in grid spacings
  unsigned workers = 0;  // 0: hardware concurrency (capped by the environment)
};

inline void check_regime(const Grid& g, double eps, const KernelOptions& opt, const char* what = "eps") {
  require(std::isfinite(eps) && eps > 0.0, ErrorKind::invalid_argument, std::string(what) + " must be positive");
  require(eps >= opt.kappa * g.h * (1.0 - 1e-12), ErrorKind::regime_guard,
          std::string(what) + " = " + std::to_string(eps) + " is below kappa * h = " + std::to_string(opt.kappa * g.h));
  require(eps < g.diameter(), ErrorKind::regime_guard, std::string(what) + " must be smaller than the domain diameter");
}

// ------------------------------------------------------------------ offsets

struct Offset {
  std::array<int, 3> z{0, 0, 0};
  long long r2 = 0;  // |z|^2 in cell units
  double r = 0.0;    // |z| in cell units
};

/// Nonzero lattice offsets with |z| <= radius (cell units), within the grid
/// extents, sorted by (|z|^2, lexicographic).
inline std::vector<Offset> lattice_offsets(const Grid& g, double radius) {
  std::array<int, 3> lim{0, 0, 0};
  for (int a = 0; a < g.dim; ++a) lim[a] = std::min(g.extents[a] - 1, static_cast<int>(std::floor(radius)) + 1);
  const double r2max = radius * radius;
  std::vector<Offset> out;
  for (int k = -lim[2]; k <= lim[2]; ++k)
    for (int j = -lim[1]; j <= lim[1]; ++j)
      for (int i = -lim[0]; i <= lim[0]; ++i) {
        long long r2 = 1LL * i * i + 1LL * j * j + 1LL * k * k;
        if (r2 == 0 || static_cast<double>(r2) > r2max * (1.0 + 1e-12) + 1e-9) continue;
        out.push_back({{i, j, k}, r2, std::sqrt(static_cast<double>(r2))});
      }
  std::sort(out.begin(), out.end(), [](const Offset& a, const Offset& b) {
    if (a.r2 != b.r2) return a.r2 < b.r2;
    return a.z < b.z;
  });
  return out;
}

// ------------------------------------------------------------- power helpers

namespace detail {

enum class PowMode { one, two, three, general };

inline PowMode pow_mode(double q) {
  if (q == 1.0) return PowMode::one;
  if (q == 2.0) return PowMode::two;
  if (q == 3.0) return PowMode::three;
  return PowMode::general;
}

/// |d|^q from a scalar difference.
template <PowMode M>
inline double pow_abs(double d, double q) {
  if constexpr (M == PowMode::one) return std::abs(d);
  else if constexpr (M == PowMode::two) return d * d;
  else if constexpr (M == PowMode::three) return std::abs(d) * d * d;
  else return std::pow(std::abs(d), q);
}

/// |v|^q from |v|^2.
template <PowMode M>
inline double pow_sq(double s, double q) {
  if constexpr (M == PowMode::one) return std::sqrt(s);
  else if constexpr (M == PowMode::two) return s;
  else if constexpr (M == PowMode::three) return s * std::sqrt(s);
  else return std::pow(s, 0.5 * q);
}

template <PowMode M>
inline double diff_pow(const double* a, const double* b, int d, double q) {
  if (d == 1) return pow_abs<M>(a[0] - b[0], q);
  double s = 0.0;
  for (int c = 0; c < d; ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
  return pow_sq<M>(s, q);
}

/// Sum over one contiguous row of |u(y) - u(x)|^q, optionally weighted by
/// 0/1 mask factors. Four fixed accumulators keep the order deterministic.
template <PowMode M>
double row_sum(const double* ux, const double* uy, const double* wx, const double* wy, int len, int d, double q) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  int i = 0;
  if (d == 1) {
    if (wx == nullptr) {
      for (; i + 4 <= len; i += 4)
        for (int l = 0; l < 4; ++l) acc[l] += pow_abs<M>(uy[i + l] - ux[i + l], q);
      for (; i < len; ++i) acc[i & 3] += pow_abs<M>(uy[i] - ux[i], q);
    } else {
      for (; i + 4 <= len; i += 4)
        for (int l = 0; l < 4; ++l) acc[l] += pow_abs<M>(uy[i + l] - ux[i + l], q) * (wx[i + l] * wy[i + l]);
      for (; i < len; ++i) acc[i & 3] += pow_abs<M>(uy[i] - ux[i], q) * (wx[i] * wy[i]);
    }
  } else {
    for (; i < len; ++i) {
      double t = diff_pow<M>(uy + static_cast<std::size_t>(i) * d, ux + static_cast<std::size_t>(i) * d, d, q);
      if (wx != nullptr) t *= wx[i] * wy[i];
      acc[i & 3] += t;
    }
  }
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

/// 0/1 weights of a mask; empty when `skip` (both masks full).
inline std::vector<double> weights_of(const DomainMask& m, bool skip) {
  std::vector<double> w;
  if (skip) return w;
  w.resize(m.grid().size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = m.inside(i) ? 1.0 : 0.0;
  return w;
}

template <PowMode M>
double offset_sum_impl(const SampledField& u, const double* win, const double* wout, const std::array<int, 3>& z, double q) {
  const Grid& g = u.grid();
  const int d = u.codim();
  std::array<int, 3> lo{}, hi{};
  for (int a = 0; a < 3; ++a) {
    lo[a] = std::max(0, -z[a]);
    hi[a] = std::min(g.extents[a], g.extents[a] - z[a]);
    if (hi[a] <= lo[a]) return 0.0;
  }
  const long long shift = z[0] + 1LL * g.extents[0] * (z[1] + 1LL * g.extents[1] * z[2]);
  const double* vals = u.values().data();
  const int len = hi[0] - lo[0];
  const bool weighted = win != nullptr;
  double total = 0.0;
  for (int k = lo[2]; k < hi[2]; ++k)
    for (int j = lo[1]; j < hi[1]; ++j) {
      const std::size_t bx = g.index(lo[0], j, k);
      const std::size_t by = static_cast<std::size_t>(static_cast<long long>(bx) + shift);
      total += row_sum<M>(vals + bx * d, vals + by * d, weighted ? win + bx : nullptr, weighted ? wout + by : nullptr, len, d, q);
    }
  return total;
}

inline double offset_sum(const SampledField& u, const double* win, const double* wout, const std::array<int, 3>& z, double q) {
  switch (pow_mode(q)) {
    case PowMode::one: return offset_sum_impl<PowMode::one>(u, win, wout, z, q);
    case PowMode::two: return offset_sum_impl<PowMode::two>(u, win, wout, z, q);
    case PowMode::three: return offset_sum_impl<PowMode::three>(u, win, wout, z, q);
    default: return offset_sum_impl<PowMode::general>(u, win, wout, z, q);
  }
}

/// Integer power by repeated multiplication (monotone under rounding).
inline double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace detail

/// S(z) for every offset within a radius, for a pair (inner, outer) of masks.
struct PairSumTable {
  std::vector<Offset> offsets;
  std::vector<double> sums;
  double h = 1.0;
  int dim = 1;
};

inline PairSumTable pair_sums(const SampledField& u, double q, const DomainMask& inner, double radius_cells, unsigned workers) {
  require(q >= 1.0 && std::isfinite(q), ErrorKind::invalid_argument, "q must be at least 1");
  require(inner.grid() == u.grid(), ErrorKind::dimension_mismatch, "inner mask must share the field grid");
  PairSumTable t;
  t.h = u.grid().h;
  t.dim = u.dim();
  t.offsets = lattice_offsets(u.grid(), radius_cells);
  t.sums.assign(t.offsets.size(), 0.0);
  const bool symmetric = inner == u.mask();
  const bool full = inner.is_full() && u.mask().is_full();
  auto win = detail::weights_of(inner, full);
  auto wout = detail::weights_of(u.mask(), full);
  const double* wi = full ? nullptr : win.data();
  const double* wo = full ? nullptr : wout.data();
  // with identical masks S(-z) = S(z): compute the half with the first nonzero
  // component positive and mirror it
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < t.offsets.size(); ++i) {
    const auto& z = t.offsets[i].z;
    bool canonical = z[0] > 0 || (z[0] == 0 && (z[1] > 0 || (z[1] == 0 && z[2] > 0)));
    if (!symmetric || canonical) todo.push_back(i);
  }
  parallel_for(todo.size(), workers, [&](std::size_t n) {
    std::size_t i = todo[n];
    t.sums[i] = detail::offset_sum(u, wi, wo, t.offsets[i].z, q);
  });
  if (symmetric) {
    for (std::size_t i = 0; i < t.offsets.size(); ++i) {
      const auto& z = t.offsets[i].z;
      bool canonical = z[0] > 0 || (z[0] == 0 && (z[1] > 0 || (z[1] == 0 && z[2] > 0)));
      if (canonical) continue;
      std::array<int, 3> m{-z[0], -z[1], -z[2]};
      // the mirror has the same |z|^2, so it sits in the same block of the sort
      auto it = std::lower_bound(t.offsets.begin(), t.offsets.end(), Offset{m, t.offsets[i].r2, 0.0},
                                 [](const Offset& a, const Offset& b) {
                                   if (a.r2 != b.r2) return a.r2 < b.r2;
                                   return a.z < b.z;
                                 });
      t.sums[i] = t.sums[static_cast<std::size_t>(it - t.offsets.begin())];
    }
  }
  return t;
}

/// h^{2N}/eps^N * sum_{|z| h <= eps} S(z) / (|z| h), summed in table order.
inline double bbm_from_table(const PairSumTable& t, double eps) {
  const double h2N = detail::ipow(t.h, 2 * t.dim);
  const double epsN = detail::ipow(eps, t.dim);
  double s = 0.0;
  for (std::size_t i = 0; i < t.offsets.size(); ++i) {
    const double rz = t.offsets[i].r * t.h;
    if (rz > eps) break;
    s += t.sums[i] * (h2N / (epsN * rz));
  }
  return s;
}

/// Discrete BBM functional. With `inner`, x ranges over the inner mask and y
/// over the field mask.
inline double bbm_value(const SampledField& u, double q, double eps, const KernelOptions& opt = {},
                        const DomainMask* inner = nullptr) {
  check_regime(u.grid(), eps, opt);
  auto t = pair_sums(u, q, inner ? *inner : u.mask(), eps / u.grid().h, opt.workers);
  return bbm_from_table(t, eps);
}

/// Discrete Gagliardo double integral sum |u(x)-u(y)|^q / |x-y|^{N+1} h^{2N}.
inline double gagliardo_seminorm_pow(const SampledField& u, double q, const KernelOptions& opt = {}) {
  const Grid& g = u.grid();
  double rmax = 0.0;
  for (int a = 0; a < g.dim; ++a) rmax += double(g.extents[a] - 1) * (g.extents[a] - 1);
  auto t = pair_sums(u, q, u.mask(), std::sqrt(rmax), opt.workers);
  const double h2N = detail::ipow(t.h, 2 * t.dim);
  double s = 0.0;
  for (std::size_t i = 0; i < t.offsets.size(); ++i) {
    const double rz = t.offsets[i].r * t.h;
    s += t.sums[i] * (h2N / (detail::ipow(rz, t.dim) * rz));
  }
  return s;
}

// ------------------------------------------------------------------- sweeps

enum class FitModel { constant, linear };

inline const char* to_string(FitModel f) { return f == FitModel::constant ? "constant" : "linear"; }

struct EpsSweep {
  std::vector<double> eps;
  std::vector<double> values;
  double limit = 0.0;
  FitModel fit = FitModel::linear;
  double residual = 0.0;
  bool non_monotone = false;  // direction changes beyond 1% of the largest value
};

inline void validate_ladder(const std::vector<double>& eps) {
  require(!eps.empty(), ErrorKind::invalid_argument, "eps list is empty");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    require(std::isfinite(eps[i]) && eps[i] > 0.0, ErrorKind::invalid_argument, "eps values must be positive");
    require(i == 0 || eps[i] < eps[i - 1], ErrorKind::invalid_argument, "eps values must be strictly decreasing");
  }
}

/// Fits the sweep: intercept of a least-squares line through the three
/// smallest eps (linear) or the mean of all values (constant).
inline void fit_sweep(EpsSweep& s, FitModel model) {
  s.fit = model;
  const std::size_t n = s.eps.size();
  if (model == FitModel::linear) {
    require(n >= 3, ErrorKind::invalid_argument, "the linear fit needs at least 3 eps values");
    double mx = 0, my = 0;
    for (std::size_t i = n - 3; i < n; ++i) {
      mx += s.eps[i];
      my += s.values[i];
    }
    mx /= 3;
    my /= 3;
    double sxx = 0, sxy = 0;
    for (std::size_t i = n - 3; i < n; ++i) {
      sxx += (s.eps[i] - mx) * (s.eps[i] - mx);
      sxy += (s.eps[i] - mx) * (s.values[i] - my);
    }
    double slope = sxx > 0 ? sxy / sxx : 0.0;
    s.limit = my - slope * mx;
    double r = 0;
    for (std::size_t i = n - 3; i < n; ++i) {
      double e = s.values[i] - (s.limit + slope * s.eps[i]);
      r += e * e;
    }
    s.residual = std::sqrt(r / 3);
  } else {
    require(n >= 1, ErrorKind::invalid_argument, "the constant fit needs at least one eps value");
    double m = 0;
    for (double v : s.values) m += v;
    m /= static_cast<double>(n);
    s.limit = m;
    double r = 0;
    for (double v : s.values) r += (v - m) * (v - m);
    s.residual = std::sqrt(r / static_cast<double>(n));
  }
  double vmax = 0;
  for (double v : s.values) vmax = std::max(vmax, std::abs(v));
  bool up = false, down = false;
  for (std::size_t i = 1; i < n; ++i) {
    double d = s.values[i] - s.values[i - 1];
    if (d > 0.01 * vmax) up = true;
    if (d < -0.01 * vmax) down = true;
  }
  s.non_monotone = up && down;
}

/// BBM functional along a strictly decreasing eps list; S(z) is computed once
/// up to the largest eps, so each value equals bbm_value at that eps.
inline EpsSweep bbm_sweep(const SampledField& u, double q, const std::vector<double>& eps, FitModel model,
                          const KernelOptions& opt = {}, const DomainMask* inner = nullptr) {
  validate_ladder(eps);
  if (model == FitModel::linear)
    require(eps.size() >= 3, ErrorKind::invalid_argument, "the linear fit needs at least 3 eps values");
  for (double e : eps) check_regime(u.grid(), e, opt);
  auto t = pair_sums(u, q, inner ? *inner : u.mask(), eps.front() / u.grid().h, opt.workers);
  EpsSweep s;
  s.eps = eps;
  for (double e : eps) s.values.push_back(bbm_from_table(t, e));
  fit_sweep(s, model);
  return s;
}

// -------------------------------------------------------------- directional

/// Difference cost W(a, b) for R^d values.
struct PowerCost {
  double q;
  template <detail::PowMode M>
  double eval(const double* a, const double* b, int d) const {
    return detail::diff_pow<M>(a, b, d, q);
  }
};

struct RationalCost {
  double eval(const double* a, const double* b, int d) const {
    double s = 0.0;
    for (int c = 0; c < d; ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
    return s / (1.0 + s);
  }
};

namespace detail {

struct Stencil {
  std::array<int, 3> base{0, 0, 0};
  int corners = 0;
  std::array<std::array<int, 3>, 8> off{};
  std::array<double, 8> w{};
};

/// Multilinear stencil for the shift s (cell units); components within 1e-9
/// of an integer are snapped, and zero-weight corners dropped.
inline Stencil make_stencil(const std::array<double, 3>& s, int dim) {
  Stencil st;
  std::array<double, 3> f{0, 0, 0};
  for (int a = 0; a < dim; ++a) {
    double r = std::round(s[a]);
    if (std::abs(s[a] - r) < 1e-9) {
      st.base[a] = static_cast<int>(r);
      f[a] = 0.0;
    } else {
      double fl = std::floor(s[a]);
      st.base[a] = static_cast<int>(fl);
      f[a] = s[a] - fl;
    }
  }
  for (int c = 0; c < (1 << dim); ++c) {
    double w = 1.0;
    std::array<int, 3> o{0, 0, 0};
    for (int a = 0; a < dim; ++a) {
      int bit = (c >> a) & 1;
      w *= bit ? f[a] : 1.0 - f[a];
      o[a] = st.base[a] + bit;
    }
    if (w == 0.0) continue;
    st.off[st.corners] = o;
    st.w[st.corners] = w;
    ++st.corners;
  }
  return st;
}

template <class Cost>
double shifted_sum(const SampledField& u, const DomainMask& inner, const std::array<double, 3>& shift, Cost&& cost,
                   unsigned workers) {
  const Grid& g = u.grid();
  const int d = u.codim();
  const Stencil st = make_stencil(shift, g.dim);
  const DomainMask& outer = u.mask();
  const std::size_t rows = static_cast<std::size_t>(g.extents[1]) * g.extents[2];
  std::vector<double> partial(rows, 0.0);
  parallel_for(rows, workers, [&](std::size_t row) {
    const int j = static_cast<int>(row % g.extents[1]);
    const int k = static_cast<int>(row / g.extents[1]);
    double acc = 0.0;
    double val[16];
    for (int i = 0; i < g.extents[0]; ++i) {
      const std::size_t xi = g.index(i, j, k);
      if (!inner.inside(xi)) continue;
      const std::array<int, 3> x{i, j, k};
      bool ok = true;
      for (int c = 0; c < d; ++c) val[c] = 0.0;
      for (int c = 0; c < st.corners && ok; ++c) {
        std::array<int, 3> y{0, 0, 0};
        for (int a = 0; a < 3; ++a) {
          y[a] = x[a] + st.off[c][a];
          if (y[a] < 0 || y[a] >= g.extents[a]) ok = false;
        }
        if (!ok) break;
        const std::size_t yi = g.index(y[0], y[1], y[2]);
        if (!outer.inside(yi)) {
          ok = false;
          break;
        }
        for (int e = 0; e < d; ++e) val[e] += st.w[c] * u.value(yi, e);
      }
      if (!ok) continue;
      acc += cost(val, u.values().data() + xi * d, d);
    }
    partial[row] = acc;
  });
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

inline void require_unit(const std::vector<double>& k, int dim) {
  require(static_cast<int>(k.size()) == dim, ErrorKind::dimension_mismatch, "direction length must equal the dimension");
  double n = 0.0;
  for (double v : k) n += v * v;
  require(std::abs(std::sqrt(n) - 1.0) <= 1e-12, ErrorKind::invalid_argument, "direction must be a unit vector");
}

}  // namespace detail

/// (1/t) sum_x W(u(x + t k), u(x)) h^N over x in `inner` (default: the field
/// mask), with u(x + t k) interpolated multilinearly; pairs whose stencil
/// leaves the field mask are dropped.
template <class Cost>
double directional_cost_sum(const SampledField& u, const Cost& cost, double t, const std::vector<double>& k,
                            const DomainMask& inner, unsigned workers) {
  const Grid& g = u.grid();
  detail::require_unit(k, g.dim);
  std::array<double, 3> shift{0, 0, 0};
  for (int a = 0; a < g.dim; ++a) shift[a] = t * k[a] / g.h;
  double s;
  if constexpr (std::is_same_v<std::decay_t<Cost>, PowerCost>) {
    const double q = cost.q;
    switch (detail::pow_mode(q)) {
      case detail::PowMode::one:
        s = detail::shifted_sum(u, inner, shift, [&](const double* a, const double* b, int d) { return cost.template eval<detail::PowMode::one>(a, b, d); }, workers);
        break;
      case detail::PowMode::two:
        s = detail::shifted_sum(u, inner, shift, [&](const double* a, const double* b, int d) { return cost.template eval<detail::PowMode::two>(a, b, d); }, workers);
        break;
      case detail::PowMode::three:
        s = detail::shifted_sum(u, inner, shift, [&](const double* a, const double* b, int d) { return cost.template eval<detail::PowMode::three>(a, b, d); }, workers);
        break;
      default:
        s = detail::shifted_sum(u, inner, shift, [&](const double* a, const double* b, int d) { return cost.template eval<detail::PowMode::general>(a, b, d); }, workers);
    }
  } else {
    s = detail::shifted_sum(u, inner, shift, [&](const double* a, const double* b, int d) { return cost.eval(a, b, d); }, workers);
  }
  return s * detail::ipow(g.h, g.dim) / t;
}

inline double directional_value(const SampledField& u, double q, double eps, const std::vector<double>& k,
                                const KernelOptions& opt = {}, const DomainMask* inner = nullptr) {
  require(q >= 1.0, ErrorKind::invalid_argument, "q must be at least 1");
  check_regime(u.grid(), eps, opt);
  return directional_cost_sum(u, PowerCost{q}, eps, k, inner ? *inner : u.mask(), opt.workers);
}

/// Default direction count 2N + 16.
inline int default_direction_count(int dim) { return 2 * dim + 16; }

/// Deterministic direction set: +-axes first, then golden-angle points on the
/// circle (N = 2) or a Fibonacci lattice on the sphere (N = 3).
inline std::vector<std::vector<double>> direction_set(int dim, int M) {
  require(M >= 2 * dim, ErrorKind::invalid_argument, "direction count must be at least 2N");
  std::vector<std::vector<double>> out;
  for (int a = 0; a < dim; ++a)
    for (double s : {1.0, -1.0}) {
      std::vector<double> v(dim, 0.0);
      v[a] = s;
      out.push_back(v);
    }
  if (dim == 1) return out;
  const int extra = M - 2 * dim;
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int j = 0; j < extra; ++j) {
    std::vector<double> v(dim);
    if (dim == 2) {
      double th = 2.0 * std::numbers::pi * std::fmod((j + 1) * golden, 1.0);
      v = {std::cos(th), std::sin(th)};
    } else {
      double z = 1.0 - 2.0 * (j + 0.5) / extra;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double th = j * std::numbers::pi * (3.0 - std::sqrt(5.0));
      v = {r * std::cos(th), r * std::sin(th), z};
    }
    double n = 0.0;
    for (double c : v) n += c * c;
    n = std::sqrt(n);
    for (double& c : v) c /= n;
    out.push_back(v);
  }
  return out;
}

struct DirectionalSup {
  double value = 0.0;
  std::vector<double> direction;
};

/// Max of directional_value over the direction set: a lower bound for the
/// supremum over the whole sphere.
inline DirectionalSup directional_sup(const SampledField& u, double q, double eps, int M = 0, const KernelOptions& opt = {},
                                      const DomainMask* inner = nullptr) {
  if (M == 0) M = default_direction_count(u.dim());
  DirectionalSup best;
  bool first = true;
  for (const auto& k : direction_set(u.dim(), M)) {
    double v = directional_value(u, q, eps, k, opt, inner);
    if (first || v > best.value) {
      best.value = v;
      best.direction = k;
      first = false;
    }
  }
  return best;
}

/// q-th power of the Besov B^{1/q}_{q,inf} seminorm, as the max over the
/// radii of the directional supremum at that radius.
inline double besov_seminorm_pow(const SampledField& u, double q, const std::vector<double>& rhos, int M = 0,
                                 const KernelOptions& opt = {}) {
  require(!rhos.empty(), ErrorKind::invalid_argument, "rho list is empty");
  double m = 0.0;
  for (double r : rhos) m = std::max(m, directional_sup(u, q, r, M, opt).value);
  return m;
}

}  // namespace bbmlab
