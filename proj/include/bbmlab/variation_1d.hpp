#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "bbmlab/bbm_kernels.hpp"
#include "bbmlab/error.hpp"
#include "bbmlab/grid.hpp"
#include "bbmlab/jump_theory.hpp"
#include "bbmlab/report.hpp"

namespace bbmlab {

/// Samples of f: I -> R^d at strictly increasing abscissae.
class Signal1D {
 public:
  Signal1D(std::vector<double> x, int codim, std::vector<double> values)
      : x_(std::move(x)), codim_(codim), values_(std::move(values)) {
    require(x_.size() >= 2, ErrorKind::invalid_argument, "a signal needs at least 2 samples");
    require(codim_ >= 1, ErrorKind::invalid_argument, "signal codimension must be at least 1");
    require(values_.size() == x_.size() * static_cast<std::size_t>(codim_), ErrorKind::dimension_mismatch,
            "signal value count must equal sample count times codimension");
    for (std::size_t i = 1; i < x_.size(); ++i)
      require(x_[i] > x_[i - 1], ErrorKind::invalid_argument, "signal abscissae must be strictly increasing");
    for (double v : values_) require(std::isfinite(v), ErrorKind::invalid_argument, "signal values must be finite");
  }

  /// Scalar samples at the cell centres of n uniform cells on [a, b].
  static Signal1D uniform(double a, double b, std::vector<double> values) {
    const std::size_t n = values.size();
    require(n >= 2 && b > a, ErrorKind::invalid_argument, "uniform signal needs 2 samples and a < b");
    std::vector<double> x(n);
    const double h = (b - a) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a + (static_cast<double>(i) + 0.5) * h;
    return Signal1D(std::move(x), 1, std::move(values));
  }

  std::size_t size() const { return x_.size(); }
  int codim() const { return codim_; }
  const std::vector<double>& abscissae() const { return x_; }
  const std::vector<double>& values() const { return values_; }
  const double* at(std::size_t i) const { return values_.data() + i * codim_; }

 private:
  std::vector<double> x_;
  int codim_;
  std::vector<double> values_;
};

/// Exact max over chains x_{i_1} < ... < x_{i_m} of sum |f(x_{i_{k+1}}) - f(x_{i_k})|^q.
inline double q_variation_pow(const Signal1D& s, double q) {
  require(q >= 1.0, ErrorKind::invalid_argument, "q must be at least 1");
  const std::size_t n = s.size();
  const int d = s.codim();
  std::vector<double> best(n, 0.0);
  double answer = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    double b = 0.0;
    for (std::size_t i = 0; i < j; ++i) {
      double d2 = 0.0;
      for (int c = 0; c < d; ++c) d2 += (s.at(j)[c] - s.at(i)[c]) * (s.at(j)[c] - s.at(i)[c]);
      b = std::max(b, best[i] + std::pow(d2, 0.5 * q));
    }
    best[j] = b;
    answer = std::max(answer, b);
  }
  return answer;
}

/// The signal read as a piecewise-constant field on the cells of its
/// (uniform, cell-centred) sampling.
inline SampledField signal_field(const Signal1D& s) {
  const auto& x = s.abscissae();
  const std::size_t n = x.size();
  const double h = (x.back() - x.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i)
    require(std::abs((x[i] - x[i - 1]) - h) <= 1e-9 * h, ErrorKind::invalid_argument,
            "the embedding check needs uniformly spaced samples");
  std::array<double, 1> origin{x.front() - 0.5 * h};
  std::array<int, 1> ext{static_cast<int>(n)};
  Grid g = Grid::make(1, origin, h, ext);
  return SampledField(DomainMask::full(g), s.codim(), s.values());
}

/// sup over the sweep of the BBM functional against 4 v_q^q.
inline SweepCheck check_vq_embedding(const Signal1D& s, double q, const SweepConfig& cfg) {
  auto u = signal_field(s);
  SweepCheck out;
  out.sweep = bbm_sweep(u, q, cfg.eps, FitModel::constant, cfg.kernel);
  double sup = *std::max_element(out.sweep.values.begin(), out.sweep.values.end());
  double v = q_variation_pow(s, q);
  out.report = make_report("vq-embedding", sup, 4.0 * v, Relation::leq, 0.0, true,
                           "q-variation embedding: A_bar <= 4 v_q^q");
  out.report.detail("v_q^q", v).detail("q", q);
  return out;
}

}  // namespace bbmlab
