#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "bbmlab/error.hpp"

namespace bbmlab {

using Point = std::array<double, 3>;

/// Volume of the unit ball in R^N.
inline double unit_ball_volume(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
  }
  fail(ErrorKind::invalid_argument, "unsupported dimension " + std::to_string(dim));
}

/// Surface measure of the unit sphere S^{N-1}.
inline double unit_sphere_area(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi;
  }
  fail(ErrorKind::invalid_argument, "unsupported dimension " + std::to_string(dim));
}

/// Uniform cell-centred grid. Sample i sits at origin + (i + 1/2) h on every
/// axis; axis 0 varies fastest in the linear index.
struct Grid {
  int dim = 1;
  Point origin{0.0, 0.0, 0.0};
  double h = 1.0;
  std::array<int, 3> extents{4, 1, 1};

  static Grid make(int dim, std::span<const double> origin, double h, std::span<const int> extents) {
    require(dim >= 1 && dim <= 3, ErrorKind::invalid_argument, "grid dimension must be 1, 2 or 3");
    require(static_cast<int>(origin.size()) == dim && static_cast<int>(extents.size()) == dim,
            ErrorKind::dimension_mismatch, "grid origin/extents length must equal the dimension");
    require(h > 0.0 && std::isfinite(h), ErrorKind::invalid_argument, "grid spacing must be positive");
    Grid g;
    g.dim = dim;
    g.h = h;
    for (int a = 0; a < dim; ++a) {
      require(extents[a] >= 4, ErrorKind::invalid_argument, "grid extents must be at least 4");
      g.origin[a] = origin[a];
      g.extents[a] = extents[a];
    }
    for (int a = dim; a < 3; ++a) {
      g.origin[a] = 0.0;
      g.extents[a] = 1;
    }
    return g;
  }

  std::size_t size() const {
    return static_cast<std::size_t>(extents[0]) * extents[1] * extents[2];
  }

  std::size_t index(int i, int j = 0, int k = 0) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(extents[0]) * (static_cast<std::size_t>(j) + static_cast<std::size_t>(extents[1]) * k);
  }

  std::array<int, 3> multi_index(std::size_t idx) const {
    std::array<int, 3> m{};
    m[0] = static_cast<int>(idx % extents[0]);
    idx /= extents[0];
    m[1] = static_cast<int>(idx % extents[1]);
    m[2] = static_cast<int>(idx / extents[1]);
    return m;
  }

  double center(int axis, int i) const { return origin[axis] + (i + 0.5) * h; }

  Point point(std::size_t idx) const {
    auto m = multi_index(idx);
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) p[a] = center(a, m[a]);
    return p;
  }

  double cell_volume() const { return std::pow(h, dim); }

  /// Largest distance between two sample points.
  double diameter() const {
    double s = 0.0;
    for (int a = 0; a < dim; ++a) s += std::pow((extents[a] - 1) * h, 2);
    return std::sqrt(s);
  }

  bool operator==(const Grid&) const = default;
};

/// Analytic description of the domain a grid discretises.
struct Domain {
  enum class Kind { box, ball };
  Kind kind = Kind::box;
  int dim = 1;
  Point lo{0.0, 0.0, 0.0};
  Point hi{1.0, 1.0, 1.0};
  Point center{0.0, 0.0, 0.0};
  double radius = 1.0;

  static Domain box(int dim, std::span<const double> lo, std::span<const double> hi) {
    require(dim >= 1 && dim <= 3, ErrorKind::invalid_argument, "domain dimension must be 1, 2 or 3");
    require(static_cast<int>(lo.size()) == dim && static_cast<int>(hi.size()) == dim,
            ErrorKind::dimension_mismatch, "box corner length must equal the dimension");
    Domain d;
    d.kind = Kind::box;
    d.dim = dim;
    for (int a = 0; a < dim; ++a) {
      require(hi[a] > lo[a], ErrorKind::invalid_argument, "box must have positive extent");
      d.lo[a] = lo[a];
      d.hi[a] = hi[a];
    }
    return d;
  }

  static Domain unit_box(int dim) {
    std::array<double, 3> lo{0, 0, 0}, hi{1, 1, 1};
    return box(dim, std::span(lo).first(dim), std::span(hi).first(dim));
  }

  static Domain ball(int dim, std::span<const double> c, double r) {
    require(dim >= 1 && dim <= 3, ErrorKind::invalid_argument, "domain dimension must be 1, 2 or 3");
    require(static_cast<int>(c.size()) == dim, ErrorKind::dimension_mismatch, "ball centre length must equal the dimension");
    require(r > 0.0, ErrorKind::invalid_argument, "ball radius must be positive");
    Domain d;
    d.kind = Kind::ball;
    d.dim = dim;
    d.radius = r;
    for (int a = 0; a < dim; ++a) {
      d.center[a] = c[a];
      d.lo[a] = c[a] - r;
      d.hi[a] = c[a] + r;
    }
    return d;
  }

  bool contains(const Point& p) const {
    if (kind == Kind::box) {
      for (int a = 0; a < dim; ++a)
        if (p[a] <= lo[a] || p[a] >= hi[a]) return false;
      return true;
    }
    double s = 0.0;
    for (int a = 0; a < dim; ++a) s += (p[a] - center[a]) * (p[a] - center[a]);
    return s < radius * radius;
  }

  double measure() const {
    if (kind == Kind::ball) return unit_ball_volume(dim) * std::pow(radius, dim);
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= hi[a] - lo[a];
    return v;
  }

  /// Grid with n cells along axis 0 covering the bounding box. Box sides must
  /// be whole multiples of the resulting spacing.
  Grid make_grid(int n) const {
    require(n >= 4, ErrorKind::invalid_argument, "grid needs at least 4 cells per axis");
    double h = (hi[0] - lo[0]) / n;
    std::array<int, 3> ext{1, 1, 1};
    for (int a = 0; a < dim; ++a) {
      double cells = (hi[a] - lo[a]) / h;
      int c = static_cast<int>(std::lround(cells));
      require(std::abs(cells - c) < 1e-9 * std::max(1.0, cells), ErrorKind::invalid_argument,
              "box side lengths must be whole multiples of the grid spacing");
      ext[a] = c;
    }
    return Grid::make(dim, std::span(lo).first(dim), h, std::span(ext).first(dim));
  }
};

/// Set of grid points belonging to the discretised domain. Never empty.
class DomainMask {
 public:
  DomainMask(Grid grid, std::vector<std::uint8_t> inside) : grid_(grid), inside_(std::move(inside)) {
    require(inside_.size() == grid_.size(), ErrorKind::dimension_mismatch, "mask size must match the grid");
    count_ = static_cast<std::size_t>(std::count_if(inside_.begin(), inside_.end(), [](std::uint8_t v) { return v != 0; }));
    require(count_ > 0, ErrorKind::empty_mask, "domain mask has no inside points");
    for (auto& v : inside_) v = v ? 1 : 0;
  }

  static DomainMask full(const Grid& grid) { return DomainMask(grid, std::vector<std::uint8_t>(grid.size(), 1)); }

  static DomainMask from_predicate(const Grid& grid, const std::function<bool(const Point&)>& pred) {
    std::vector<std::uint8_t> in(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) in[i] = pred(grid.point(i)) ? 1 : 0;
    return DomainMask(grid, std::move(in));
  }

  static DomainMask of_domain(const Domain& domain, int n) {
    Grid g = domain.make_grid(n);
    if (domain.kind == Domain::Kind::box) return full(g);
    return from_predicate(g, [&](const Point& p) { return domain.contains(p); });
  }

  const Grid& grid() const { return grid_; }
  int dim() const { return grid_.dim; }
  bool inside(std::size_t idx) const { return inside_[idx] != 0; }
  const std::vector<std::uint8_t>& flags() const { return inside_; }
  std::size_t count() const { return count_; }
  double measure() const { return static_cast<double>(count_) * grid_.cell_volume(); }
  bool is_full() const { return count_ == inside_.size(); }

  bool operator==(const DomainMask& o) const { return grid_ == o.grid_ && inside_ == o.inside_; }

 private:
  Grid grid_;
  std::vector<std::uint8_t> inside_;
  std::size_t count_ = 0;
};

namespace detail {

// Felzenszwalb-Huttenlocher lower envelope of parabolas.
inline void distance_transform_1d(const double* f, int n, double* out, std::vector<int>& v, std::vector<double>& z) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  v.assign(n, 0);
  z.assign(n + 1, 0.0);
  int k = 0;
  v[0] = 0;
  z[0] = -inf;
  z[1] = inf;
  auto meet = [&](int q, int p) {
    return ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * q - 2.0 * p);
  };
  for (int q = 1; q < n; ++q) {
    double s = meet(q, v[k]);
    while (s <= z[k]) {
      --k;
      s = meet(q, v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = inf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    double d = q - v[k];
    out[q] = d * d + f[v[k]];
  }
}

}  // namespace detail

/// Squared distance, in cell units, from every grid point to the nearest
/// point outside the mask. The grid is padded by one layer of outside points.
inline std::vector<double> squared_distance_to_outside(const DomainMask& mask) {
  const Grid& g = mask.grid();
  const double big = 1e30;
  std::array<int, 3> pe{1, 1, 1};
  for (int a = 0; a < g.dim; ++a) pe[a] = g.extents[a] + 2;
  const std::size_t total = static_cast<std::size_t>(pe[0]) * pe[1] * pe[2];
  std::vector<double> f(total, 0.0);
  auto pidx = [&](int i, int j, int k) { return static_cast<std::size_t>(i) + pe[0] * (static_cast<std::size_t>(j) + static_cast<std::size_t>(pe[1]) * k); };
  const int off1 = g.dim >= 2 ? 1 : 0, off2 = g.dim >= 3 ? 1 : 0;
  for (int k = 0; k < g.extents[2]; ++k)
    for (int j = 0; j < g.extents[1]; ++j)
      for (int i = 0; i < g.extents[0]; ++i)
        if (mask.inside(g.index(i, j, k))) f[pidx(i + 1, j + off1, k + off2)] = big;

  std::vector<double> line, res;
  std::vector<int> v;
  std::vector<double> z;
  for (int axis = 0; axis < g.dim; ++axis) {
    int n = pe[axis];
    line.resize(n);
    res.resize(n);
    std::array<int, 3> other{};
    int o1 = (axis + 1) % 3, o2 = (axis + 2) % 3;
    for (int b = 0; b < pe[o2]; ++b)
      for (int a = 0; a < pe[o1]; ++a) {
        std::array<int, 3> c{};
        c[o1] = a;
        c[o2] = b;
        for (int t = 0; t < n; ++t) {
          c[axis] = t;
          line[t] = f[pidx(c[0], c[1], c[2])];
        }
        detail::distance_transform_1d(line.data(), n, res.data(), v, z);
        for (int t = 0; t < n; ++t) {
          c[axis] = t;
          f[pidx(c[0], c[1], c[2])] = res[t];
        }
      }
    (void)other;
  }
  std::vector<double> out(g.size());
  for (int k = 0; k < g.extents[2]; ++k)
    for (int j = 0; j < g.extents[1]; ++j)
      for (int i = 0; i < g.extents[0]; ++i) out[g.index(i, j, k)] = f[pidx(i + 1, j + off1, k + off2)];
  return out;
}

/// Inside points x such that every sample within distance `radius` of x is
/// inside as well (strictly: the nearest outside sample is farther than radius).
inline DomainMask erode(const DomainMask& mask, double radius) {
  require(radius >= 0.0, ErrorKind::invalid_argument, "erosion radius must be nonnegative");
  const Grid& g = mask.grid();
  const double r = radius / g.h;
  const double thresh = r * r * (1.0 + 1e-9) + 1e-9;
  auto d2 = squared_distance_to_outside(mask);
  std::vector<std::uint8_t> in(g.size(), 0);
  std::size_t kept = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (mask.inside(i) && d2[i] > thresh) {
      in[i] = 1;
      ++kept;
    }
  require(kept > 0, ErrorKind::empty_mask, "erosion by " + std::to_string(radius) + " empties the mask");
  return DomainMask(g, std::move(in));
}

/// Values of u: Omega -> R^d at the grid points; entries outside the mask are 0.
class SampledField {
 public:
  SampledField(DomainMask mask, int codim, std::vector<double> values)
      : mask_(std::move(mask)), codim_(codim), values_(std::move(values)) {
    require(codim_ >= 1, ErrorKind::invalid_argument, "field codimension must be at least 1");
    require(values_.size() == mask_.grid().size() * static_cast<std::size_t>(codim_), ErrorKind::dimension_mismatch,
            "field value count must equal grid size times codimension");
    for (std::size_t i = 0; i < mask_.grid().size(); ++i) {
      for (int c = 0; c < codim_; ++c) {
        double& v = values_[i * codim_ + c];
        if (!mask_.inside(i)) {
          v = 0.0;
        } else {
          require(std::isfinite(v), ErrorKind::invalid_argument, "field values must be finite at inside points");
        }
      }
    }
  }

  const DomainMask& mask() const { return mask_; }
  const Grid& grid() const { return mask_.grid(); }
  int dim() const { return mask_.grid().dim; }
  int codim() const { return codim_; }
  const std::vector<double>& values() const { return values_; }
  double value(std::size_t idx, int c = 0) const { return values_[idx * codim_ + c]; }

  /// Largest Euclidean norm |u(x)| over inside points.
  double sup_norm() const {
    double m = 0.0;
    for (std::size_t i = 0; i < grid().size(); ++i) {
      if (!mask_.inside(i)) continue;
      double s = 0.0;
      for (int c = 0; c < codim_; ++c) s += values_[i * codim_ + c] * values_[i * codim_ + c];
      m = std::max(m, std::sqrt(s));
    }
    return m;
  }

  SampledField scaled(double lambda) const {
    std::vector<double> v(values_);
    for (auto& x : v) x *= lambda;
    return SampledField(mask_, codim_, std::move(v));
  }

 private:
  DomainMask mask_;
  int codim_;
  std::vector<double> values_;
};

}  // namespace bbmlab
