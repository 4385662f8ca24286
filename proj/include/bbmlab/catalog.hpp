#pragma once

// Analytic test-field catalog. Each kind evaluates pointwise, knows its own
// jump set and, where meaningful, its gradient, gradient jump set and total
// variation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bbmlab/error.hpp"
#include "bbmlab/grid.hpp"
#include "bbmlab/jump_spec.hpp"

namespace bbmlab {

using FieldParams = std::map<std::string, std::vector<double>>;

class AnalyticField {
 public:
  AnalyticField(std::string kind, Domain domain, int codim) : kind_(std::move(kind)), domain_(domain), codim_(codim) {}
  virtual ~AnalyticField() = default;

  const std::string& kind() const { return kind_; }
  const Domain& domain() const { return domain_; }
  int dim() const { return domain_.dim; }
  int codim() const { return codim_; }

  /// Writes codim() values at x. `h` is the sampling spacing (only the
  /// Hoelder kind uses it, to choose its number of terms).
  virtual void eval(const Point& x, double h, double* out) const = 0;

  double value(const Point& x, double h = 0.0) const {
    double v[16];
    eval(x, h, v);
    return v[0];
  }

  virtual bool has_gradient() const { return false; }
  virtual void gradient(const Point&, double*) const {
    fail(ErrorKind::unsupported, "field kind '" + kind_ + "' has no analytic gradient");
  }

  /// Jump set of the field itself (empty for continuous kinds).
  virtual JumpSpec jump() const { return JumpSpec{dim(), codim_, {}}; }
  /// Jump set of the gradient, for eikonal and affine kinds.
  virtual std::optional<JumpSpec> gradient_jump() const { return std::nullopt; }
  /// Total variation over the domain, for smooth kinds.
  virtual std::optional<double> gradient_l1() const { return std::nullopt; }

  virtual bool is_indicator() const { return false; }
  virtual bool is_eikonal() const { return false; }
  /// Distance to the set where the gradient jumps (eikonal kinds).
  virtual double ridge_distance(const Point&) const { return std::numeric_limits<double>::infinity(); }

 private:
  std::string kind_;
  Domain domain_;
  int codim_;
};

using FieldPtr = std::shared_ptr<const AnalyticField>;

namespace detail {

class ParamReader {
 public:
  ParamReader(const std::string& kind, const FieldParams& p, std::set<std::string> allowed) : kind_(kind), p_(p) {
    for (const auto& [k, v] : p)
      require(allowed.count(k) > 0, ErrorKind::invalid_argument,
              "field '" + kind + "' has no parameter '" + k + "'");
  }
  bool has(const std::string& k) const { return p_.count(k) > 0; }
  double scalar(const std::string& k, double def) const {
    auto it = p_.find(k);
    if (it == p_.end()) return def;
    require(it->second.size() == 1, ErrorKind::invalid_argument, "parameter '" + k + "' of '" + kind_ + "' must be a scalar");
    require(std::isfinite(it->second[0]), ErrorKind::invalid_argument, "parameter '" + k + "' must be finite");
    return it->second[0];
  }
  std::vector<double> vec(const std::string& k, std::vector<double> def) const {
    auto it = p_.find(k);
    if (it == p_.end()) return def;
    for (double v : it->second) require(std::isfinite(v), ErrorKind::invalid_argument, "parameter '" + k + "' must be finite");
    return it->second;
  }
  std::vector<double> vec_n(const std::string& k, std::vector<double> def, std::size_t n) const {
    auto v = vec(k, std::move(def));
    require(v.size() == n, ErrorKind::dimension_mismatch,
            "parameter '" + k + "' of '" + kind_ + "' needs " + std::to_string(n) + " entries");
    return v;
  }

 private:
  std::string kind_;
  const FieldParams& p_;
};

inline Point domain_center(const Domain& d) {
  Point c{0, 0, 0};
  for (int a = 0; a < d.dim; ++a) c[a] = d.kind == Domain::Kind::ball ? d.center[a] : 0.5 * (d.lo[a] + d.hi[a]);
  return c;
}

inline double min_side(const Domain& d) {
  double m = std::numeric_limits<double>::infinity();
  for (int a = 0; a < d.dim; ++a) m = std::min(m, d.hi[a] - d.lo[a]);
  return m;
}

/// H^{N-1} measure of the slice {x_0 = t} of the domain.
inline double axis0_slice_measure(const Domain& d, double t) {
  if (t <= d.lo[0] || t >= d.hi[0]) return 0.0;
  if (d.kind == Domain::Kind::box) {
    double m = 1.0;
    for (int a = 1; a < d.dim; ++a) m *= d.hi[a] - d.lo[a];
    return m;
  }
  double s2 = d.radius * d.radius - (t - d.center[0]) * (t - d.center[0]);
  if (d.dim == 1) return 1.0;
  if (d.dim == 2) return 2.0 * std::sqrt(s2);
  return std::numbers::pi * s2;
}

/// True when the closed ball B(c, r) lies inside the open domain.
inline bool ball_inside(const Domain& d, const Point& c, double r) {
  if (d.kind == Domain::Kind::box) {
    for (int a = 0; a < d.dim; ++a)
      if (c[a] - r <= d.lo[a] || c[a] + r >= d.hi[a]) return false;
    return true;
  }
  double s = 0.0;
  for (int a = 0; a < d.dim; ++a) s += (c[a] - d.center[a]) * (c[a] - d.center[a]);
  return std::sqrt(s) + r < d.radius;
}

inline Point to_point(const std::vector<double>& v) {
  Point p{0, 0, 0};
  for (std::size_t a = 0; a < v.size() && a < 3; ++a) p[a] = v[a];
  return p;
}

/// Portable uniform double in [0, 1) from a 64-bit engine.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Integral of |cos| over [0, t], extended as an odd function.
inline double abs_cos_primitive(double t) {
  if (t < 0) return -abs_cos_primitive(-t);
  double k = std::floor(t / std::numbers::pi);
  double r = t - k * std::numbers::pi;
  double g = r <= 0.5 * std::numbers::pi ? std::sin(r) : 2.0 - std::sin(r);
  return 2.0 * k + g;
}

inline void require_eikonal_dim(const std::string& kind, const Domain& d) {
  require(d.dim == 1 || d.dim == 2, ErrorKind::unsupported, "eikonal kind '" + kind + "' supports dimensions 1 and 2 only");
}

}  // namespace detail

// ---------------------------------------------------------------- smooth kinds

class ConstantField final : public AnalyticField {
 public:
  ConstantField(const Domain& d, double c) : AnalyticField("constant", d, 1), c_(c) {}
  void eval(const Point&, double, double* out) const override { out[0] = c_; }
  bool has_gradient() const override { return true; }
  void gradient(const Point&, double* g) const override {
    for (int a = 0; a < dim(); ++a) g[a] = 0.0;
  }
  std::optional<JumpSpec> gradient_jump() const override { return JumpSpec{dim(), dim(), {}}; }
  std::optional<double> gradient_l1() const override { return 0.0; }

 private:
  double c_;
};

class LinearField final : public AnalyticField {
 public:
  LinearField(const Domain& d, std::vector<double> slope, double b) : AnalyticField("linear", d, 1), slope_(std::move(slope)), b_(b) {}
  void eval(const Point& x, double, double* out) const override {
    double s = b_;
    for (int a = 0; a < dim(); ++a) s += slope_[a] * x[a];
    out[0] = s;
  }
  bool has_gradient() const override { return true; }
  void gradient(const Point&, double* g) const override {
    for (int a = 0; a < dim(); ++a) g[a] = slope_[a];
  }
  std::optional<JumpSpec> gradient_jump() const override { return JumpSpec{dim(), dim(), {}}; }
  std::optional<double> gradient_l1() const override {
    double n = 0.0;
    for (double s : slope_) n += s * s;
    return std::sqrt(n) * domain().measure();
  }

 private:
  std::vector<double> slope_;
  double b_;
};

class RampField final : public AnalyticField {
 public:
  RampField(const Domain& d, double from, double to) : AnalyticField("ramp", d, 1), from_(from), to_(to) {
    require(to > from, ErrorKind::invalid_argument, "ramp needs from < to");
  }
  void eval(const Point& x, double, double* out) const override {
    out[0] = std::clamp((x[0] - from_) / (to_ - from_), 0.0, 1.0);
  }
  bool has_gradient() const override { return true; }
  void gradient(const Point& x, double* g) const override {
    for (int a = 0; a < dim(); ++a) g[a] = 0.0;
    if (x[0] > from_ && x[0] < to_) g[0] = 1.0 / (to_ - from_);
  }
  std::optional<double> gradient_l1() const override {
    if (domain().kind != Domain::Kind::box && dim() > 1) return std::nullopt;
    double a = std::max(from_, domain().lo[0]), b = std::min(to_, domain().hi[0]);
    double cross = dim() == 1 ? 1.0 : detail::axis0_slice_measure(domain(), 0.5 * (domain().lo[0] + domain().hi[0]));
    return std::max(0.0, b - a) / (to_ - from_) * cross;
  }

 private:
  double from_, to_;
};

class SineField final : public AnalyticField {
 public:
  SineField(const Domain& d, double amp, double freq) : AnalyticField("sine", d, 1), amp_(amp), freq_(freq) {
    require(freq > 0.0, ErrorKind::invalid_argument, "sine frequency must be positive");
  }
  void eval(const Point& x, double, double* out) const override { out[0] = amp_ * std::sin(freq_ * std::numbers::pi * x[0]); }
  bool has_gradient() const override { return true; }
  void gradient(const Point& x, double* g) const override {
    for (int a = 0; a < dim(); ++a) g[a] = 0.0;
    g[0] = amp_ * freq_ * std::numbers::pi * std::cos(freq_ * std::numbers::pi * x[0]);
  }
  std::optional<double> gradient_l1() const override {
    if (domain().kind != Domain::Kind::box && dim() > 1) return std::nullopt;
    double w = freq_ * std::numbers::pi;
    double line = std::abs(amp_) * (detail::abs_cos_primitive(w * domain().hi[0]) - detail::abs_cos_primitive(w * domain().lo[0]));
    double cross = dim() == 1 ? 1.0 : detail::axis0_slice_measure(domain(), 0.5 * (domain().lo[0] + domain().hi[0]));
    return line * cross;
  }

 private:
  double amp_, freq_;
};

/// Finite lacunary cosine series, sum_{a} sum_{j<=J} 2^{-js} cos(2^j pi x_a + phi_{a,j}),
/// with J = ceil(log2(1/h)) at sampling time.
class HoelderField final : public AnalyticField {
 public:
  static constexpr int kMaxTerms = 60;

  HoelderField(const Domain& d, double s, std::uint64_t seed) : AnalyticField("hoelder", d, 1), s_(s) {
    require(s > 0.0 && s <= 1.0, ErrorKind::invalid_argument, "hoelder exponent must lie in (0, 1]");
    std::mt19937_64 rng(seed);
    for (int a = 0; a < 3; ++a)
      for (int j = 0; j <= kMaxTerms; ++j) phase_[a][j] = 2.0 * std::numbers::pi * detail::uniform01(rng);
  }
  static int terms_for(double h) {
    if (!(h > 0.0)) return 30;
    return std::clamp(static_cast<int>(std::ceil(std::log2(1.0 / h))), 0, kMaxTerms);
  }
  double exponent() const { return s_; }
  void eval(const Point& x, double h, double* out) const override {
    int J = terms_for(h);
    double s = 0.0;
    for (int a = 0; a < dim(); ++a) {
      double freq = std::numbers::pi;
      for (int j = 0; j <= J; ++j) {
        s += std::exp2(-j * s_) * std::cos(freq * x[a] + phase_[a][j]);
        freq *= 2.0;
      }
    }
    out[0] = s;
  }

 private:
  double s_;
  double phase_[3][kMaxTerms + 1]{};
};

// ------------------------------------------------------------- indicator kinds

class Step1DField final : public AnalyticField {
 public:
  Step1DField(const Domain& d, double at, double height) : AnalyticField("step-1d", d, 1), at_(at), height_(height) {
    require(d.dim == 1, ErrorKind::dimension_mismatch, "step-1d is one-dimensional");
    require(at > d.lo[0] && at < d.hi[0], ErrorKind::invalid_argument, "step position must lie inside the domain");
    require(height != 0.0, ErrorKind::invalid_argument, "step height must be nonzero");
  }
  void eval(const Point& x, double, double* out) const override { out[0] = x[0] > at_ ? height_ : 0.0; }
  bool is_indicator() const override { return height_ == 1.0; }
  bool has_gradient() const override { return true; }
  void gradient(const Point&, double* g) const override { g[0] = 0.0; }
  JumpSpec jump() const override {
    JumpSpec j{1, 1, {}};
    j.pieces.push_back({SurfaceKind::point, 1.0, {height_}, {0.0}, {1.0, 0.0, 0.0}});
    return j;
  }

 private:
  double at_, height_;
};

class HalfPlaneIndicator final : public AnalyticField {
 public:
  HalfPlaneIndicator(const Domain& d, std::vector<double> normal, double offset)
      : AnalyticField("half-plane-indicator", d, 1), offset_(offset) {
    double n = 0.0;
    for (double v : normal) n += v * v;
    n = std::sqrt(n);
    require(n > 0.0, ErrorKind::invalid_argument, "half-plane normal must be nonzero");
    for (int a = 0; a < d.dim; ++a) normal_[a] = normal[a] / n;
    measure_ = slice_measure();
  }
  void eval(const Point& x, double, double* out) const override {
    double s = 0.0;
    for (int a = 0; a < dim(); ++a) s += normal_[a] * x[a];
    out[0] = s > offset_ ? 1.0 : 0.0;
  }
  bool is_indicator() const override { return true; }
  bool has_gradient() const override { return true; }
  void gradient(const Point&, double* g) const override {
    for (int a = 0; a < dim(); ++a) g[a] = 0.0;
  }
  JumpSpec jump() const override {
    JumpSpec j{dim(), 1, {}};
    if (measure_ > 0.0) {
      SurfaceKind k = dim() == 1 ? SurfaceKind::point : dim() == 2 ? SurfaceKind::segment : SurfaceKind::polygon_facet;
      j.pieces.push_back({k, measure_, {1.0}, {0.0}, normal_});
    }
    return j;
  }

 private:
  double slice_measure() const {
    const Domain& d = domain();
    if (d.kind == Domain::Kind::ball) {
      double c = 0.0;
      for (int a = 0; a < d.dim; ++a) c += normal_[a] * d.center[a];
      double dist = std::abs(offset_ - c);
      if (dist >= d.radius) return 0.0;
      double s2 = d.radius * d.radius - dist * dist;
      return d.dim == 1 ? 1.0 : d.dim == 2 ? 2.0 * std::sqrt(s2) : std::numbers::pi * s2;
    }
    if (d.dim == 1) {
      double t = offset_ / normal_[0];
      return (t > d.lo[0] && t < d.hi[0]) ? 1.0 : 0.0;
    }
    if (d.dim == 2) {
      // parametrise the line as p0 + s t and clip s to the box
      Point p0{offset_ * normal_[0], offset_ * normal_[1], 0.0};
      double t[2] = {-normal_[1], normal_[0]};
      double smin = -std::numeric_limits<double>::infinity(), smax = std::numeric_limits<double>::infinity();
      for (int a = 0; a < 2; ++a) {
        if (std::abs(t[a]) < 1e-15) {
          if (p0[a] <= d.lo[a] || p0[a] >= d.hi[a]) return 0.0;
          continue;
        }
        double s1 = (d.lo[a] - p0[a]) / t[a], s2 = (d.hi[a] - p0[a]) / t[a];
        smin = std::max(smin, std::min(s1, s2));
        smax = std::min(smax, std::max(s1, s2));
      }
      return std::max(0.0, smax - smin);
    }
    for (int a = 0; a < 3; ++a) {
      if (std::abs(std::abs(normal_[a]) - 1.0) < 1e-15) {
        double t = offset_ / normal_[a];
        if (t <= d.lo[a] || t >= d.hi[a]) return 0.0;
        double m = 1.0;
        for (int b = 0; b < 3; ++b)
          if (b != a) m *= d.hi[b] - d.lo[b];
        return m;
      }
    }
    fail(ErrorKind::unsupported, "3D half-plane in a box needs an axis-aligned normal");
  }

  Point normal_{0, 0, 0};
  double offset_;
  double measure_ = 0.0;
};

class PolygonIndicator final : public AnalyticField {
 public:
  PolygonIndicator(const Domain& d, std::vector<double> flat) : AnalyticField("polygon-indicator", d, 1) {
    require(d.dim == 2, ErrorKind::dimension_mismatch, "polygon-indicator is two-dimensional");
    require(flat.size() >= 6 && flat.size() % 2 == 0, ErrorKind::invalid_argument, "polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < flat.size(); i += 2) vx_.push_back({flat[i], flat[i + 1]});
    double area2 = 0.0;
    for (std::size_t i = 0; i < vx_.size(); ++i) {
      const auto& p = vx_[i];
      const auto& q = vx_[(i + 1) % vx_.size()];
      area2 += p[0] * q[1] - q[0] * p[1];
    }
    require(area2 != 0.0, ErrorKind::invalid_argument, "polygon is degenerate");
    if (area2 < 0) std::reverse(vx_.begin(), vx_.end());
    for (const auto& v : vx_) require(d.contains({v[0], v[1], 0.0}), ErrorKind::invalid_argument, "polygon vertices must lie inside the domain");
  }
  void eval(const Point& x, double, double* out) const override {
    bool in = false;
    for (std::size_t i = 0, j = vx_.size() - 1; i < vx_.size(); j = i++) {
      const auto& a = vx_[i];
      const auto& b = vx_[j];
      if ((a[1] > x[1]) != (b[1] > x[1]) && x[0] < (b[0] - a[0]) * (x[1] - a[1]) / (b[1] - a[1]) + a[0]) in = !in;
    }
    out[0] = in ? 1.0 : 0.0;
  }
  bool is_indicator() const override { return true; }
  bool has_gradient() const override { return true; }
  void gradient(const Point&, double* g) const override { g[0] = g[1] = 0.0; }
  JumpSpec jump() const override {
    JumpSpec j{2, 1, {}};
    for (std::size_t i = 0; i < vx_.size(); ++i) {
      const auto& p = vx_[i];
      const auto& q = vx_[(i + 1) % vx_.size()];
      double dx = q[0] - p[0], dy = q[1] - p[1];
      double len = std::hypot(dx, dy);
      if (len == 0.0) continue;
      j.pieces.push_back({SurfaceKind::segment, len, {0.0}, {1.0}, {dy / len, -dx / len, 0.0}});
    }
    return j;
  }

 private:
  std::vector<std::array<double, 2>> vx_;
};

class BallIndicator final : public AnalyticField {
 public:
  BallIndicator(const Domain& d, Point c, double r) : AnalyticField("ball-indicator", d, 1), c_(c), r_(r) {
    require(r > 0.0, ErrorKind::invalid_argument, "ball radius must be positive");
    require(detail::ball_inside(d, c, r), ErrorKind::invalid_argument, "ball must lie inside the domain");
  }
  void eval(const Point& x, double, double* out) const override {
    double s = 0.0;
    for (int a = 0; a < dim(); ++a) s += (x[a] - c_[a]) * (x[a] - c_[a]);
    out[0] = s < r_ * r_ ? 1.0 : 0.0;
  }
  bool is_indicator() const override { return true; }
  bool has_gradient() const override { return true; }
  void gradient(const Point&, double* g) const override {
    for (int a = 0; a < dim(); ++a) g[a] = 0.0;
  }
  JumpSpec jump() const override {
    JumpSpec j{dim(), 1, {}};
    if (dim() == 1) {
      j.pieces.push_back({SurfaceKind::point, 1.0, {0.0}, {1.0}, {1.0, 0, 0}});
      j.pieces.push_back({SurfaceKind::point, 1.0, {0.0}, {1.0}, {-1.0, 0, 0}});
    } else if (dim() == 2) {
      j.pieces.push_back({SurfaceKind::circle_arc, 2.0 * std::numbers::pi * r_, {0.0}, {1.0}, {1.0, 0, 0}});
    } else {
      j.pieces.push_back({SurfaceKind::sphere_patch, 4.0 * std::numbers::pi * r_ * r_, {0.0}, {1.0}, {1.0, 0, 0}});
    }
    return j;
  }

 private:
  Point c_;
  double r_;
};

/// Tensor-product blocks with constant R^d values. Box domains only.
class PiecewiseConstantMulti final : public AnalyticField {
 public:
  PiecewiseConstantMulti(const Domain& d, int codim, std::array<std::vector<double>, 3> breaks, std::vector<double> values)
      : AnalyticField("piecewise-constant-multi", d, codim), breaks_(std::move(breaks)), values_(std::move(values)) {
    require(d.kind == Domain::Kind::box, ErrorKind::unsupported, "piecewise-constant-multi needs a box domain");
    std::size_t blocks = 1;
    for (int a = 0; a < 3; ++a) {
      if (a >= d.dim) breaks_[a].clear();
      for (std::size_t i = 0; i < breaks_[a].size(); ++i) {
        require(breaks_[a][i] > d.lo[a] && breaks_[a][i] < d.hi[a], ErrorKind::invalid_argument, "breaks must lie inside the box");
        require(i == 0 || breaks_[a][i] > breaks_[a][i - 1], ErrorKind::invalid_argument, "breaks must increase");
      }
      nb_[a] = static_cast<int>(breaks_[a].size()) + 1;
      blocks *= nb_[a];
    }
    require(values_.size() == blocks * codim, ErrorKind::dimension_mismatch, "piecewise-constant-multi needs codim values per block");
  }

  static PiecewiseConstantMulti random(const Domain& d, int codim, int pieces, std::uint64_t seed) {
    require(pieces >= 1, ErrorKind::invalid_argument, "pieces must be at least 1");
    std::mt19937_64 rng(seed);
    std::array<std::vector<double>, 3> br;
    std::size_t blocks = 1;
    for (int a = 0; a < d.dim; ++a) {
      double L = d.hi[a] - d.lo[a];
      for (int j = 0; j + 1 < pieces; ++j) br[a].push_back(d.lo[a] + L * (j + 1 + 0.3 * (detail::uniform01(rng) - 0.5)) / pieces);
      blocks *= pieces;
    }
    std::vector<double> vals(blocks * codim);
    for (auto& v : vals) v = 2.0 * detail::uniform01(rng) - 1.0;
    return PiecewiseConstantMulti(d, codim, std::move(br), std::move(vals));
  }

  void eval(const Point& x, double, double* out) const override {
    std::size_t b = block_of(x);
    for (int c = 0; c < codim(); ++c) out[c] = values_[b * codim() + c];
  }
  bool has_gradient() const override { return codim() == 1; }
  void gradient(const Point&, double* g) const override {
    for (int a = 0; a < dim(); ++a) g[a] = 0.0;
  }
  JumpSpec jump() const override {
    JumpSpec j{dim(), codim(), {}};
    const Domain& d = domain();
    for (int a = 0; a < dim(); ++a) {
      for (int k = 0; k + 1 < nb_[a]; ++k) {
        // every block face across break k of axis a
        int o1 = (a + 1) % 3, o2 = (a + 2) % 3;
        for (int i2 = 0; i2 < nb_[o2]; ++i2)
          for (int i1 = 0; i1 < nb_[o1]; ++i1) {
            std::array<int, 3> lo{}, hi{};
            lo[a] = k;
            hi[a] = k + 1;
            lo[o1] = hi[o1] = i1;
            lo[o2] = hi[o2] = i2;
            double m = 1.0;
            for (int b : {o1, o2})
              if (b < dim()) m *= width(b, lo[b]);
            std::vector<double> up(codim()), dn(codim());
            bool differ = false;
            for (int c = 0; c < codim(); ++c) {
              dn[c] = values_[flat(lo) * codim() + c];
              up[c] = values_[flat(hi) * codim() + c];
              differ = differ || up[c] != dn[c];
            }
            if (!differ) continue;
            Point n{0, 0, 0};
            n[a] = 1.0;
            SurfaceKind sk = dim() == 1 ? SurfaceKind::point : dim() == 2 ? SurfaceKind::segment : SurfaceKind::polygon_facet;
            j.pieces.push_back({sk, m, up, dn, n});
          }
      }
    }
    (void)d;
    return j;
  }
  bool is_indicator() const override {
    if (codim() != 1) return false;
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0 || v == 1.0; });
  }

 private:
  double width(int axis, int blk) const {
    const Domain& d = domain();
    double a = blk == 0 ? d.lo[axis] : breaks_[axis][blk - 1];
    double b = blk + 1 == nb_[axis] ? d.hi[axis] : breaks_[axis][blk];
    return b - a;
  }
  std::size_t flat(const std::array<int, 3>& b) const {
    return static_cast<std::size_t>(b[0]) + static_cast<std::size_t>(nb_[0]) * (b[1] + static_cast<std::size_t>(nb_[1]) * b[2]);
  }
  std::size_t block_of(const Point& x) const {
    std::array<int, 3> b{0, 0, 0};
    for (int a = 0; a < dim(); ++a)
      b[a] = static_cast<int>(std::upper_bound(breaks_[a].begin(), breaks_[a].end(), x[a]) - breaks_[a].begin());
    return flat(b);
  }

  std::array<std::vector<double>, 3> breaks_;
  std::array<int, 3> nb_{1, 1, 1};
  std::vector<double> values_;
};

// --------------------------------------------------------------- eikonal kinds

namespace detail {

struct Segment2 {
  std::array<double, 2> a, b;
};

inline double segment_distance(const Segment2& s, const Point& x) {
  double dx = s.b[0] - s.a[0], dy = s.b[1] - s.a[1];
  double l2 = dx * dx + dy * dy;
  double t = l2 > 0 ? std::clamp(((x[0] - s.a[0]) * dx + (x[1] - s.a[1]) * dy) / l2, 0.0, 1.0) : 0.0;
  return std::hypot(x[0] - (s.a[0] + t * dx), x[1] - (s.a[1] + t * dy));
}

}  // namespace detail

/// Distance to the boundary of a box (1D: roof min(x - a, b - x)).
class PyramidEikonal final : public AnalyticField {
 public:
  explicit PyramidEikonal(const Domain& d) : AnalyticField("pyramid-eikonal", d, 1) {
    detail::require_eikonal_dim(kind(), d);
    require(d.kind == Domain::Kind::box, ErrorKind::unsupported, "pyramid-eikonal needs a box domain");
    if (d.dim == 2) {
      double W = d.hi[0] - d.lo[0], H = d.hi[1] - d.lo[1];
      double m = 0.5 * std::min(W, H);
      std::array<double, 2> p{d.lo[0] + m, d.lo[1] + m}, q{d.hi[0] - m, d.hi[1] - m};
      // ridge endpoints: p and q coincide for a square
      if (W >= H) q[1] = p[1];
      else q[0] = p[0];
      ridges_.push_back({{d.lo[0], d.lo[1]}, p});
      ridges_.push_back({{d.lo[0], d.hi[1]}, W >= H ? p : q});
      ridges_.push_back({{d.hi[0], d.lo[1]}, W >= H ? q : p});
      ridges_.push_back({{d.hi[0], d.hi[1]}, q});
      if (W != H) ridges_.push_back({p, q});
    }
  }
  void eval(const Point& x, double, double* out) const override {
    int face;
    out[0] = nearest(x, face);
  }
  bool has_gradient() const override { return true; }
  bool is_eikonal() const override { return true; }
  void gradient(const Point& x, double* g) const override {
    int face;
    nearest(x, face);
    for (int a = 0; a < dim(); ++a) g[a] = 0.0;
    g[face / 2] = face % 2 == 0 ? 1.0 : -1.0;
  }
  double ridge_distance(const Point& x) const override {
    if (dim() == 1) return std::abs(x[0] - 0.5 * (domain().lo[0] + domain().hi[0]));
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : ridges_) m = std::min(m, detail::segment_distance(s, x));
    return m;
  }
  std::optional<JumpSpec> gradient_jump() const override {
    const Domain& d = domain();
    JumpSpec j{dim(), dim(), {}};
    double delta = 1e-6 * detail::min_side(d);
    if (dim() == 1) {
      double mid = 0.5 * (d.lo[0] + d.hi[0]);
      j.pieces.push_back(piece_across(SurfaceKind::point, 1.0, {mid, 0, 0}, {1.0, 0, 0}, delta));
      return j;
    }
    for (const auto& s : ridges_) {
      double dx = s.b[0] - s.a[0], dy = s.b[1] - s.a[1];
      double len = std::hypot(dx, dy);
      if (len == 0.0) continue;
      Point mid{0.5 * (s.a[0] + s.b[0]), 0.5 * (s.a[1] + s.b[1]), 0.0};
      j.pieces.push_back(piece_across(SurfaceKind::segment, len, mid, {dy / len, -dx / len, 0.0}, delta));
    }
    return j;
  }

 private:
  double nearest(const Point& x, int& face) const {
    const Domain& d = domain();
    double best = std::numeric_limits<double>::infinity();
    face = 0;
    for (int a = 0; a < dim(); ++a) {
      double lo = x[a] - d.lo[a], hi = d.hi[a] - x[a];
      if (lo < best) {
        best = lo;
        face = 2 * a;
      }
      if (hi < best) {
        best = hi;
        face = 2 * a + 1;
      }
    }
    return best;
  }
  JumpPiece piece_across(SurfaceKind k, double measure, Point mid, Point n, double delta) const {
    JumpPiece p;
    p.surface = k;
    p.measure = measure;
    p.normal = n;
    p.u_plus.resize(dim());
    p.u_minus.resize(dim());
    Point xp = mid, xm = mid;
    for (int a = 0; a < dim(); ++a) {
      xp[a] += delta * n[a];
      xm[a] -= delta * n[a];
    }
    gradient(xp, p.u_plus.data());
    gradient(xm, p.u_minus.data());
    return p;
  }

  std::vector<detail::Segment2> ridges_;
};

/// sign * |x - c|.
class ConeEikonal final : public AnalyticField {
 public:
  ConeEikonal(const Domain& d, Point c, double sign) : AnalyticField("cone-eikonal", d, 1), c_(c), sign_(sign < 0 ? -1.0 : 1.0) {
    detail::require_eikonal_dim(kind(), d);
  }
  void eval(const Point& x, double, double* out) const override { out[0] = sign_ * ridge_distance(x); }
  bool has_gradient() const override { return true; }
  bool is_eikonal() const override { return true; }
  void gradient(const Point& x, double* g) const override {
    double r = ridge_distance(x);
    for (int a = 0; a < dim(); ++a) g[a] = r > 0 ? sign_ * (x[a] - c_[a]) / r : (a == 0 ? sign_ : 0.0);
  }
  double ridge_distance(const Point& x) const override {
    double s = 0.0;
    for (int a = 0; a < dim(); ++a) s += (x[a] - c_[a]) * (x[a] - c_[a]);
    return std::sqrt(s);
  }
  std::optional<JumpSpec> gradient_jump() const override {
    JumpSpec j{dim(), dim(), {}};
    if (dim() == 1 && domain().contains(c_)) j.pieces.push_back({SurfaceKind::point, 1.0, {sign_}, {-sign_}, {1.0, 0, 0}});
    return j;
  }

 private:
  Point c_;
  double sign_;
};

/// Triangle wave of slope +-1 along axis 0.
class ZigzagEikonal final : public AnalyticField {
 public:
  ZigzagEikonal(const Domain& d, double period, double phase) : AnalyticField("zigzag-eikonal", d, 1), P_(period), phase_(phase) {
    detail::require_eikonal_dim(kind(), d);
    require(period > 0.0, ErrorKind::invalid_argument, "zigzag period must be positive");
  }
  void eval(const Point& x, double, double* out) const override {
    double r = reduced(x[0]);
    out[0] = 0.5 * P_ - std::abs(r - 0.5 * P_);
  }
  bool has_gradient() const override { return true; }
  bool is_eikonal() const override { return true; }
  void gradient(const Point& x, double* g) const override {
    for (int a = 0; a < dim(); ++a) g[a] = 0.0;
    g[0] = reduced(x[0]) < 0.5 * P_ ? 1.0 : -1.0;
  }
  double ridge_distance(const Point& x) const override {
    double r = reduced(x[0]);
    double half = 0.5 * P_;
    double m = std::fmod(r, half);
    return std::min(m, half - m);
  }
  std::optional<JumpSpec> gradient_jump() const override {
    const Domain& d = domain();
    JumpSpec j{dim(), dim(), {}};
    double half = 0.5 * P_;
    double k0 = std::ceil((d.lo[0] - phase_) / half);
    for (double k = k0;; k += 1.0) {
      double t = phase_ + k * half;
      if (t >= d.hi[0]) break;
      if (t <= d.lo[0]) continue;
      double m = detail::axis0_slice_measure(d, t);
      if (m <= 0.0) continue;
      // valleys (k even) turn -1 into +1, peaks the reverse
      bool valley = std::fmod(std::abs(k), 2.0) == 0.0;
      std::vector<double> up(dim(), 0.0), dn(dim(), 0.0);
      up[0] = valley ? 1.0 : -1.0;
      dn[0] = -up[0];
      j.pieces.push_back({dim() == 1 ? SurfaceKind::point : SurfaceKind::segment, m, up, dn, {1.0, 0, 0}});
    }
    return j;
  }

 private:
  double reduced(double x0) const {
    double t = x0 - phase_;
    return t - P_ * std::floor(t / P_);
  }
  double P_, phase_;
};

// ----------------------------------------------------------------- factory

struct FieldInfo {
  std::string name;
  std::string params;
  std::string summary;
};

inline const std::vector<FieldInfo>& field_catalog() {
  static const std::vector<FieldInfo> info = {
      {"constant", "c", "u = c"},
      {"linear", "slope[N], intercept", "u = slope . x + intercept"},
      {"sine", "amplitude, frequency", "u = amplitude * sin(frequency * pi * x_0)"},
      {"ramp", "from, to", "clamped linear ramp along axis 0"},
      {"hoelder", "s, seed", "lacunary cosine series with Hoelder exponent s"},
      {"step-1d", "at, height", "height * [x > at] (N = 1)"},
      {"half-plane-indicator", "normal[N], offset", "[x . normal > offset]"},
      {"polygon-indicator", "vertices[2m] | center[2], side", "indicator of a polygon (N = 2)"},
      {"ball-indicator", "center[N], radius", "indicator of a ball"},
      {"piecewise-constant-multi", "codim, pieces, seed | breaks0.., values", "R^d-valued tensor blocks (box domain)"},
      {"pyramid-eikonal", "", "distance to the box boundary (N <= 2)"},
      {"cone-eikonal", "center[N], sign", "sign * |x - center| (N <= 2)"},
      {"zigzag-eikonal", "period, phase", "slope +-1 triangle wave along axis 0 (N <= 2)"},
  };
  return info;
}

inline FieldPtr make_field(const std::string& name, const Domain& d, const FieldParams& params = {}) {
  using detail::ParamReader;
  const std::size_t N = static_cast<std::size_t>(d.dim);
  Point ctr = detail::domain_center(d);
  std::vector<double> ctr_v(ctr.begin(), ctr.begin() + N);
  std::vector<double> e1(N, 0.0);
  e1[0] = 1.0;

  if (name == "constant") {
    ParamReader r(name, params, {"c"});
    return std::make_shared<ConstantField>(d, r.scalar("c", 1.0));
  }
  if (name == "linear") {
    ParamReader r(name, params, {"slope", "intercept"});
    return std::make_shared<LinearField>(d, r.vec_n("slope", e1, N), r.scalar("intercept", 0.0));
  }
  if (name == "sine") {
    ParamReader r(name, params, {"amplitude", "frequency"});
    return std::make_shared<SineField>(d, r.scalar("amplitude", 1.0), r.scalar("frequency", 1.0));
  }
  if (name == "ramp") {
    ParamReader r(name, params, {"from", "to"});
    double L = d.hi[0] - d.lo[0];
    return std::make_shared<RampField>(d, r.scalar("from", d.lo[0] + 0.25 * L), r.scalar("to", d.lo[0] + 0.75 * L));
  }
  if (name == "hoelder") {
    ParamReader r(name, params, {"s", "seed"});
    return std::make_shared<HoelderField>(d, r.scalar("s", 0.75), static_cast<std::uint64_t>(r.scalar("seed", 1.0)));
  }
  if (name == "step-1d") {
    ParamReader r(name, params, {"at", "height"});
    require(d.dim == 1, ErrorKind::dimension_mismatch, "step-1d is one-dimensional");
    return std::make_shared<Step1DField>(d, r.scalar("at", ctr[0]), r.scalar("height", 1.0));
  }
  if (name == "half-plane-indicator") {
    ParamReader r(name, params, {"normal", "offset"});
    auto n = r.vec_n("normal", e1, N);
    double nn = 0.0, off = 0.0;
    for (std::size_t a = 0; a < N; ++a) nn += n[a] * n[a];
    nn = std::sqrt(nn);
    for (std::size_t a = 0; a < N; ++a) off += n[a] / (nn > 0 ? nn : 1.0) * ctr[a];
    return std::make_shared<HalfPlaneIndicator>(d, n, r.scalar("offset", off));
  }
  if (name == "polygon-indicator") {
    ParamReader r(name, params, {"vertices", "center", "side"});
    require(d.dim == 2, ErrorKind::dimension_mismatch, "polygon-indicator is two-dimensional");
    std::vector<double> verts;
    if (r.has("vertices")) {
      verts = r.vec("vertices", {});
    } else {
      auto c = r.vec_n("center", ctr_v, 2);
      double s = r.scalar("side", 0.5 * detail::min_side(d));
      require(s > 0.0, ErrorKind::invalid_argument, "square side must be positive");
      double hs = 0.5 * s;
      verts = {c[0] - hs, c[1] - hs, c[0] + hs, c[1] - hs, c[0] + hs, c[1] + hs, c[0] - hs, c[1] + hs};
    }
    return std::make_shared<PolygonIndicator>(d, verts);
  }
  if (name == "ball-indicator") {
    ParamReader r(name, params, {"center", "radius"});
    return std::make_shared<BallIndicator>(d, detail::to_point(r.vec_n("center", ctr_v, N)),
                                           r.scalar("radius", 0.25 * detail::min_side(d)));
  }
  if (name == "piecewise-constant-multi") {
    ParamReader r(name, params, {"codim", "pieces", "seed", "breaks0", "breaks1", "breaks2", "values"});
    int codim = static_cast<int>(r.scalar("codim", 1.0));
    require(codim >= 1 && codim <= 16, ErrorKind::invalid_argument, "codim must be in [1, 16]");
    if (r.has("values")) {
      std::array<std::vector<double>, 3> br{r.vec("breaks0", {}), r.vec("breaks1", {}), r.vec("breaks2", {})};
      return std::make_shared<PiecewiseConstantMulti>(d, codim, br, r.vec("values", {}));
    }
    return std::make_shared<PiecewiseConstantMulti>(PiecewiseConstantMulti::random(
        d, codim, static_cast<int>(r.scalar("pieces", 3.0)), static_cast<std::uint64_t>(r.scalar("seed", 1.0))));
  }
  if (name == "pyramid-eikonal") {
    ParamReader r(name, params, {});
    return std::make_shared<PyramidEikonal>(d);
  }
  if (name == "cone-eikonal") {
    ParamReader r(name, params, {"center", "sign"});
    return std::make_shared<ConeEikonal>(d, detail::to_point(r.vec_n("center", ctr_v, N)), r.scalar("sign", -1.0));
  }
  if (name == "zigzag-eikonal") {
    ParamReader r(name, params, {"period", "phase"});
    double L = d.hi[0] - d.lo[0];
    return std::make_shared<ZigzagEikonal>(d, r.scalar("period", 0.5 * L), r.scalar("phase", d.lo[0]));
  }
  fail(ErrorKind::unknown_kind, "unknown field kind '" + name + "'");
}

/// Values of the analytic field at the inside cell centres.
inline SampledField sample_analytic(const AnalyticField& f, const DomainMask& mask) {
  require(f.dim() == mask.dim(), ErrorKind::dimension_mismatch, "field and mask dimensions differ");
  const Grid& g = mask.grid();
  const int d = f.codim();
  std::vector<double> v(g.size() * d, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (mask.inside(i)) f.eval(g.point(i), g.h, &v[i * d]);
  return SampledField(mask, d, std::move(v));
}

/// The analytic gradient sampled as an R^N-valued field.
inline SampledField sample_gradient(const AnalyticField& f, const DomainMask& mask) {
  require(f.dim() == mask.dim(), ErrorKind::dimension_mismatch, "field and mask dimensions differ");
  require(f.has_gradient() && f.codim() == 1, ErrorKind::unsupported, "field kind '" + f.kind() + "' has no analytic gradient");
  const Grid& g = mask.grid();
  const int N = g.dim;
  std::vector<double> v(g.size() * N, 0.0);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (mask.inside(i)) f.gradient(g.point(i), &v[i * N]);
  return SampledField(mask, N, std::move(v));
}

}  // namespace bbmlab
