#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "bbmlab/error.hpp"

namespace bbmlab {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule via Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
  require(n >= 1, ErrorKind::invalid_argument, "Gauss-Legendre order must be positive");
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

/// Sum of Gauss rules over the panels delimited by `breaks` (increasing).
template <class F>
double integrate_panels(F&& f, const std::vector<double>& breaks, const GaussRule& rule) {
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    double a = breaks[p], b = breaks[p + 1];
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    total += half * s;
  }
  return total;
}

/// Panel breaks on [a, b]: `uniform` equal panels, with the first and last
/// panel further split geometrically (ratio 1/2, `levels` times) toward the ends.
inline std::vector<double> graded_breaks(double a, double b, int uniform, int levels) {
  require(uniform >= 1 && levels >= 0, ErrorKind::invalid_argument, "bad panel layout");
  std::vector<double> br;
  double w = (b - a) / uniform;
  std::vector<double> head;
  for (int l = levels; l >= 1; --l) head.push_back(a + w * std::ldexp(1.0, -l));
  br.push_back(a);
  br.insert(br.end(), head.begin(), head.end());
  for (int i = 1; i < uniform; ++i) br.push_back(a + w * i);
  for (int l = 1; l <= levels; ++l) br.push_back(b - w * std::ldexp(1.0, -l));
  br.push_back(b);
  return br;
}

}  // namespace bbmlab
