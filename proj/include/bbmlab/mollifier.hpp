#pragma once

#include <cmath>
#include <string>

#include "bbmlab/error.hpp"
#include "bbmlab/grid.hpp"
#include "bbmlab/quadrature.hpp"

namespace bbmlab {

enum class MollifierProfile { polynomial_bump, exponential_bump };

inline MollifierProfile parse_profile(const std::string& s) {
  if (s == "polynomial-bump") return MollifierProfile::polynomial_bump;
  if (s == "exponential-bump") return MollifierProfile::exponential_bump;
  fail(ErrorKind::unknown_kind, "unknown mollifier profile '" + s + "'");
}

inline const char* to_string(MollifierProfile p) {
  return p == MollifierProfile::polynomial_bump ? "polynomial-bump" : "exponential-bump";
}

/// Radial bump eta(z) = c f(|z|) supported in the closed unit ball, with
/// f(r) = (1 - r^2)^k or exp(-1 / (1 - r^2)).
class Mollifier {
 public:
  static constexpr int kMinResolution = 64;

  Mollifier(MollifierProfile profile, int k, int dim, int resolution)
      : profile_(profile), k_(k), dim_(dim), resolution_(resolution) {
    require(dim >= 1 && dim <= 3, ErrorKind::invalid_argument, "mollifier dimension must be 1, 2 or 3");
    require(resolution >= kMinResolution, ErrorKind::invalid_argument,
            "mollifier resolution must be at least " + std::to_string(kMinResolution));
    require(profile != MollifierProfile::polynomial_bump || k >= 1, ErrorKind::invalid_argument,
            "polynomial bump exponent must be at least 1");
    double mass = radial_integral([&](double r) { return shape(r); }, resolution_);
    double check = radial_integral([&](double r) { return shape(r); }, 2 * resolution_);
    require(mass > 0.0 && std::isfinite(mass), ErrorKind::invalid_argument, "mollifier profile is not integrable");
    require(std::abs(mass - check) <= 1e-10 * check, ErrorKind::invalid_argument,
            "mollifier normalisation did not converge at this resolution");
    c_ = 1.0 / mass;
  }

  MollifierProfile profile() const { return profile_; }
  int exponent() const { return k_; }
  int dim() const { return dim_; }
  int resolution() const { return resolution_; }
  double normalization() const { return c_; }

  /// Unnormalised radial shape f(r).
  double shape(double r) const {
    if (r >= 1.0) return 0.0;
    double t = 1.0 - r * r;
    if (profile_ == MollifierProfile::polynomial_bump) return std::pow(t, k_);
    return std::exp(-1.0 / t);
  }
  /// f'(r).
  double shape_derivative(double r) const {
    if (r >= 1.0) return 0.0;
    double t = 1.0 - r * r;
    if (profile_ == MollifierProfile::polynomial_bump) return -2.0 * k_ * r * std::pow(t, k_ - 1);
    return std::exp(-1.0 / t) * (-2.0 * r / (t * t));
  }

  double radial(double r) const { return c_ * shape(r); }
  double radial_derivative(double r) const { return c_ * shape_derivative(r); }

  double operator()(const double* z) const { return radial(norm(z)); }

  /// grad eta(z) = c f'(|z|) z / |z|.
  void gradient(const double* z, double* g) const {
    double r = norm(z);
    double s = r > 0.0 ? radial_derivative(r) / r : 0.0;
    for (int a = 0; a < dim_; ++a) g[a] = s * z[a];
  }

  /// Integral over the unit ball of a radial function g(|z|).
  template <class G>
  double radial_integral(G&& g, int resolution) const {
    static const GaussRule rule = gauss_legendre(16);
    auto br = graded_breaks(0.0, 1.0, resolution, 30);
    double s = integrate_panels([&](double r) { return g(r) * std::pow(r, dim_ - 1); }, br, rule);
    return unit_sphere_area(dim_) * s;
  }
  template <class G>
  double radial_integral(G&& g) const {
    return radial_integral(std::forward<G>(g), resolution_);
  }

  /// (int |z|^{1/(q-1)} |grad eta|^{q/(q-1)} dz)^{q-1}, for q > 1.
  double grad_moment(double q) const {
    require(q > 1.0, ErrorKind::invalid_argument, "gradient moment needs q > 1");
    double e1 = 1.0 / (q - 1.0), e2 = q / (q - 1.0);
    double I = radial_integral([&](double r) { return std::pow(r, e1) * std::pow(std::abs(radial_derivative(r)), e2); });
    return std::pow(I, q - 1.0);
  }

  /// (int |z|^{2/(p-2)} eta^{p/(p-2)} dz)^{(p-2)/2}, for p > 2.
  double val_moment(double p) const {
    require(p > 2.0, ErrorKind::unsupported, "the value moment is undefined for p <= 2");
    double e1 = 2.0 / (p - 2.0), e2 = p / (p - 2.0);
    double I = radial_integral([&](double r) { return std::pow(r, e1) * std::pow(radial(r), e2); });
    return std::pow(I, 0.5 * (p - 2.0));
  }

  /// Constant multiplying the limit energy bound at q = p = 3.
  double d_eta() const { return grad_moment(3.0) + val_moment(3.0); }

 private:
  double norm(const double* z) const {
    double s = 0.0;
    for (int a = 0; a < dim_; ++a) s += z[a] * z[a];
    return std::sqrt(s);
  }

  MollifierProfile profile_;
  int k_;
  int dim_;
  int resolution_;
  double c_ = 1.0;
};

inline Mollifier build_mollifier(MollifierProfile profile, int k, int dim, int resolution) {
  return Mollifier(profile, k, dim, resolution);
}

inline double mollifier_d_eta(const Mollifier& eta) { return eta.d_eta(); }

}  // namespace bbmlab
