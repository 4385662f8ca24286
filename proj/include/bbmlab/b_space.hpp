#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cmath>
#include <vector>

#include "bbmlab/bbm_kernels.hpp"
#include "bbmlab/error.hpp"
#include "bbmlab/grid.hpp"
#include "bbmlab/parallel.hpp"
#include "bbmlab/report.hpp"

namespace bbmlab {

/// Disjoint cubes of k x ... x k cells (side eps = k h) inside the mask.
struct CubePacking {
  double eps = 0.0;
  int cells = 1;
  std::vector<std::array<int, 3>> origins;  // lowest cell of each cube
  std::size_t count() const { return origins.size(); }
};

enum class PackingStrategy { greedy, exact_small };

inline constexpr std::size_t kExactSmallLimit = 20;

namespace detail {

inline bool cube_inside(const DomainMask& m, const std::array<int, 3>& o, int k) {
  const Grid& g = m.grid();
  std::array<int, 3> kk{1, 1, 1};
  for (int a = 0; a < g.dim; ++a) {
    if (o[a] < 0 || o[a] + k > g.extents[a]) return false;
    kk[a] = k;
  }
  for (int c = 0; c < kk[2]; ++c)
    for (int b = 0; b < kk[1]; ++b)
      for (int a = 0; a < kk[0]; ++a)
        if (!m.inside(g.index(o[0] + a, o[1] + b, o[2] + c))) return false;
  return true;
}

inline bool cubes_overlap(const std::array<int, 3>& p, const std::array<int, 3>& q, int k, int dim) {
  for (int a = 0; a < dim; ++a)
    if (std::abs(p[a] - q[a]) >= k) return false;
  return true;
}

inline std::size_t cube_cap(double eps, int dim) {
  // floor(eps^{-(N-1)}), guarded against rounding just below an integer
  double c = std::pow(eps, -(dim - 1));
  return static_cast<std::size_t>(std::floor(c * (1.0 + 1e-12)));
}

}  // namespace detail

/// eps^{N-1} / |Q|^2 * sum_{x, y in Q} |u(y) - u(x)| h^{2N} for the cube with
/// lowest cell `origin` and k cells per side (eps = k h).
inline double cube_score(const SampledField& u, const std::array<int, 3>& origin, int k) {
  const Grid& g = u.grid();
  require(k >= 1, ErrorKind::invalid_argument, "cube needs at least one cell per side");
  require(detail::cube_inside(u.mask(), origin, k), ErrorKind::invalid_argument, "cube is not inside the mask");
  const int N = g.dim, d = u.codim();
  std::array<int, 3> kk{1, 1, 1};
  for (int a = 0; a < N; ++a) kk[a] = k;
  std::vector<std::size_t> cells;
  for (int c = 0; c < kk[2]; ++c)
    for (int b = 0; b < kk[1]; ++b)
      for (int a = 0; a < kk[0]; ++a) cells.push_back(g.index(origin[0] + a, origin[1] + b, origin[2] + c));
  double pair_sum = 0.0;
  if (d == 1) {
    // sum_{x,y} |v_x - v_y| = 2 sum_i (2i - m + 1) v_(i) over sorted values
    std::vector<double> v;
    v.reserve(cells.size());
    for (auto i : cells) v.push_back(u.value(i));
    std::sort(v.begin(), v.end());
    const double m = static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) pair_sum += (2.0 * static_cast<double>(i) - m + 1.0) * v[i];
    pair_sum *= 2.0;
  } else {
    for (auto x : cells)
      for (auto y : cells) {
        double s = 0.0;
        for (int c = 0; c < d; ++c) s += (u.value(y, c) - u.value(x, c)) * (u.value(y, c) - u.value(x, c));
        pair_sum += std::sqrt(s);
      }
  }
  const double eps = k * g.h;
  // eps^{N-1} / (eps^N)^2 * pair_sum * h^{2N} = eps^{N-1} pair_sum / k^{2N}
  return std::pow(eps, N - 1) * pair_sum / detail::ipow(static_cast<double>(k), 2 * N);
}

/// Asserts disjointness, containment and the cube-count cap.
inline void validate_packing(const SampledField& u, const CubePacking& p) {
  const int N = u.dim();
  require(p.count() <= detail::cube_cap(p.eps, N), ErrorKind::invalid_argument, "packing exceeds the cube-count cap");
  for (std::size_t i = 0; i < p.count(); ++i) {
    require(detail::cube_inside(u.mask(), p.origins[i], p.cells), ErrorKind::invalid_argument, "packing cube leaves the mask");
    for (std::size_t j = i + 1; j < p.count(); ++j)
      require(!detail::cubes_overlap(p.origins[i], p.origins[j], p.cells, N), ErrorKind::invalid_argument,
              "packing cubes overlap");
  }
}

struct CubeResult {
  double value = 0.0;
  CubePacking packing;
  std::size_t candidates = 0;
};

/// Feasible value of the eps-cube functional: a lower bound of its supremum
/// over all packings. Candidate cubes sit on a lattice of stride
/// max(1, k / stride_divisor) cells, where k = round(eps / h).
inline CubeResult cube_functional(const SampledField& u, double eps, PackingStrategy strategy, const KernelOptions& opt = {},
                                  int stride_divisor = 4) {
  check_regime(u.grid(), eps, opt);
  require(stride_divisor >= 1, ErrorKind::invalid_argument, "stride divisor must be positive");
  const Grid& g = u.grid();
  const int N = g.dim;
  const int k = std::max(1, static_cast<int>(std::lround(eps / g.h)));
  const int stride = std::max(1, k / stride_divisor);
  CubeResult res;
  res.packing.eps = k * g.h;
  res.packing.cells = k;

  std::vector<std::array<int, 3>> cand;
  std::array<int, 3> lim{1, 1, 1};
  for (int a = 0; a < N; ++a) lim[a] = g.extents[a] - k + 1;
  for (int c = 0; c < lim[2]; c += (N >= 3 ? stride : 1))
    for (int b = 0; b < lim[1]; b += (N >= 2 ? stride : 1))
      for (int a = 0; a < lim[0]; a += stride) {
        std::array<int, 3> o{a, b, c};
        if (detail::cube_inside(u.mask(), o, k)) cand.push_back(o);
      }
  res.candidates = cand.size();
  std::vector<double> score(cand.size(), 0.0);
  parallel_for(cand.size(), opt.workers, [&](std::size_t i) { score[i] = cube_score(u, cand[i], k); });

  const std::size_t cap = detail::cube_cap(res.packing.eps, N);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (score[i] > 0.0) order.push_back(i);

  if (strategy == PackingStrategy::greedy) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (score[a] != score[b]) return score[a] > score[b];
      return cand[a] < cand[b];
    });
    std::vector<std::size_t> chosen;
    for (std::size_t i : order) {
      if (chosen.size() >= cap) break;
      bool ok = true;
      for (std::size_t j : chosen) ok = ok && !detail::cubes_overlap(cand[i], cand[j], k, N);
      if (ok) chosen.push_back(i);
    }
    for (std::size_t i : chosen) {
      res.value += score[i];
      res.packing.origins.push_back(cand[i]);
    }
  } else {
    require(cand.size() <= kExactSmallLimit, ErrorKind::invalid_argument,
            "exact enumeration needs at most " + std::to_string(kExactSmallLimit) + " candidate cubes");
    const std::size_t n = order.size();
    double best = 0.0;
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) > cap) continue;
      bool ok = true;
      double v = 0.0;
      for (std::size_t i = 0; i < n && ok; ++i) {
        if (!(mask >> i & 1u)) continue;
        v += score[order[i]];
        for (std::size_t j = i + 1; j < n && ok; ++j)
          if (mask >> j & 1u) ok = !detail::cubes_overlap(cand[order[i]], cand[order[j]], k, N);
      }
      if (ok && v > best) {
        best = v;
        best_mask = mask;
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (best_mask >> i & 1u) {
        res.value += score[order[i]];
        res.packing.origins.push_back(cand[order[i]]);
      }
  }
  validate_packing(u, res.packing);
  return res;
}

/// Feasible cube value <= N^{(N+1)/(2q)} (bbm(eps sqrt N))^{1/q}, eps = k h.
inline ComparisonReport check_b_bound(const SampledField& u, double q, double eps, const KernelOptions& opt = {},
                                      int stride_divisor = 4) {
  const int N = u.dim();
  auto cube = cube_functional(u, eps, PackingStrategy::greedy, opt, stride_divisor);
  const double eps2 = cube.packing.eps * std::sqrt(static_cast<double>(N));
  check_regime(u.grid(), eps2, opt, "eps * sqrt(N)");
  const double a = bbm_value(u, q, eps2, opt);
  const double rhs = std::pow(static_cast<double>(N), (N + 1) / (2.0 * q)) * std::pow(a, 1.0 / q);
  auto r = make_report("b-bound", cube.value, rhs, Relation::leq, 0.0, true,
                       "cube functional bound: [u]_eps <= N^{(N+1)/(2q)} A(eps sqrt N)^{1/q}");
  r.note = "cube value is a feasible packing, a lower bound of the supremum";
  r.detail("eps", cube.packing.eps).detail("cubes", static_cast<double>(cube.packing.count())).detail("q", q);
  return r;
}

}  // namespace bbmlab
