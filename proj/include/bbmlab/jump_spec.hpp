#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "bbmlab/error.hpp"
#include "bbmlab/grid.hpp"

namespace bbmlab {

enum class SurfaceKind { point, segment, polyline, polygon_facet, circle_arc, sphere_patch };

inline const char* to_string(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::point: return "point";
    case SurfaceKind::segment: return "segment";
    case SurfaceKind::polyline: return "polyline";
    case SurfaceKind::polygon_facet: return "polygon-facet";
    case SurfaceKind::circle_arc: return "circle-arc";
    case SurfaceKind::sphere_patch: return "sphere-patch";
  }
  return "?";
}

/// One piece of a jump set. `normal` points from the u_minus side to the
/// u_plus side; for curved pieces it is a representative normal.
struct JumpPiece {
  SurfaceKind surface = SurfaceKind::point;
  double measure = 0.0;  // H^{N-1} measure, analytic
  std::vector<double> u_plus;
  std::vector<double> u_minus;
  Point normal{1.0, 0.0, 0.0};

  double jump_norm() const {
    double s = 0.0;
    for (std::size_t c = 0; c < u_plus.size(); ++c) s += (u_plus[c] - u_minus[c]) * (u_plus[c] - u_minus[c]);
    return std::sqrt(s);
  }
};

struct JumpSpec {
  int dim = 1;
  int codim = 1;
  std::vector<JumpPiece> pieces;

  bool empty() const { return pieces.empty(); }

  double total_measure() const {
    double m = 0.0;
    for (const auto& p : pieces) m += p.measure;
    return m;
  }

  /// Sum over pieces of |u+ - u-|^q times the piece measure.
  double jump_power_integral(double q) const {
    double s = 0.0;
    for (const auto& p : pieces) s += std::pow(p.jump_norm(), q) * p.measure;
    return s;
  }

  void validate() const {
    for (const auto& p : pieces) {
      require(static_cast<int>(p.u_plus.size()) == codim && static_cast<int>(p.u_minus.size()) == codim,
              ErrorKind::dimension_mismatch, "jump traces must have the field codimension");
      double n2 = 0.0;
      for (int a = 0; a < dim; ++a) n2 += p.normal[a] * p.normal[a];
      require(std::abs(n2 - 1.0) < 1e-12, ErrorKind::invalid_argument, "jump normal must be a unit vector");
      require(p.jump_norm() > 0.0, ErrorKind::invalid_argument, "jump traces must differ");
      require(p.measure > 0.0 && std::isfinite(p.measure), ErrorKind::invalid_argument,
              "jump piece measure must be positive and finite");
    }
  }
};

}  // namespace bbmlab
