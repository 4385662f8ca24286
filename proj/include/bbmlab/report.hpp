#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace bbmlab {

/// Relative slack granted to inequalities that hold term by term, to absorb
/// the rounding of summing the two sides separately.
inline constexpr double kRoundoff = 1e-12;

enum class Relation { equal_within, leq, geq };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::equal_within: return "equal-within";
    case Relation::leq: return "leq";
    case Relation::geq: return "geq";
  }
  return "?";
}

struct ComparisonReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::leq;
  double tolerance = 0.0;
  bool pass = false;
  bool hard = false;  // exact inequality; a failure makes the run fail
  std::string citation;
  std::string note;
  std::vector<std::pair<std::string, double>> details;

  ComparisonReport& detail(std::string key, double value) {
    details.emplace_back(std::move(key), value);
    return *this;
  }
};

inline bool relation_holds(double lhs, double rhs, Relation rel, double tol) {
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) return false;
  const double slack = kRoundoff * std::max(std::abs(lhs), std::abs(rhs));
  switch (rel) {
    case Relation::equal_within: return std::abs(lhs - rhs) <= tol * std::abs(rhs) + slack + 1e-300;
    case Relation::leq: return lhs <= rhs + tol * std::abs(rhs) + slack;
    case Relation::geq: return lhs + tol * std::abs(rhs) + slack >= rhs;
  }
  return false;
}

inline ComparisonReport make_report(std::string name, double lhs, double rhs, Relation rel, double tol, bool hard,
                                    std::string citation) {
  ComparisonReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.relation = rel;
  r.tolerance = tol;
  r.hard = hard;
  r.citation = std::move(citation);
  r.pass = relation_holds(lhs, rhs, rel, tol);
  return r;
}

}  // namespace bbmlab
