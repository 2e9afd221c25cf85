#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nlexp/interval_set.hpp"

namespace nlexp {

enum class DistKind {
  kNormal,
  kUniform,
  kTwoPoint,
  kDiscreteAtoms,
  kPareto,
  kCauchy,
  kSymmetricLogTail,
};

std::string to_string(DistKind kind);

struct Atom {
  double x = 0.0;
  double p = 0.0;
};

// Inverse cdf of the standard normal law, accurate to ~1e-15 (rational
// approximation refined by one Halley step against erfc).
double standard_normal_quantile(double u);

// One sigma-additive scalar law. A value type: cheap to copy for the
// closed-form families, vector-backed for atomic ones.
//
// The SymmetricLogTail family is the sign-symmetric law with
// P(|X| > t) = min(1, e / (t ln t)); its support is |x| >= e and it has no
// finite first moment while still satisfying t P(|X| > t) -> 0.
class Distribution {
 public:
  static Distribution normal(double mean, double stddev);
  static Distribution uniform(double lo, double hi);
  static Distribution two_point(double lo, double hi, double p_hi);
  static Distribution discrete_atoms(std::vector<Atom> atoms);
  static Distribution pareto(double shape, double scale);
  static Distribution cauchy(double location, double scale);
  static Distribution symmetric_log_tail();

  DistKind kind() const { return kind_; }

  // P(X <= x); right-continuous, nondecreasing.
  double cdf(double x) const;
  // P(X = x); zero except at atoms of the discrete families.
  double mass(double x) const;
  // P(|X| > t) for t > 0.
  double abs_tail(double t) const;
  // Generalized inverse of the cdf on u in (0,1).
  double quantile(double u) const;
  // Tail-parametrized inverses for q in (0, 1/2]: the value x with
  // P(X <= x) = q, respectively P(X > x) = q. Unlike quantile(1-q), the
  // upper form stays accurate for q far below one ulp of 1.
  double quantile_lower_tail(double q) const;
  double quantile_upper_tail(double q) const;
  // Exact probability of one interval / a disjoint union of intervals.
  double prob(const Interval& iv) const;
  double prob(const IntervalSet& set) const;

  bool discrete_law() const;
  const std::vector<Atom>& atoms() const;  // discrete kinds only

  // Closed support [lo, hi] (infinite endpoints allowed).
  std::pair<double, double> support() const;
  // sup { p >= 0 : E|X|^p < infinity }; +inf for the light-tailed kinds.
  double tail_power() const;

  // Named parameter accessors; each asserts the matching kind.
  double mean() const;
  double stddev() const;
  double lo() const;
  double hi() const;
  double p_hi() const;
  double shape() const;
  double scale() const;
  double location() const;

 private:
  Distribution(DistKind kind, double a, double b, double c);

  DistKind kind_;
  double a_ = 0.0, b_ = 0.0, c_ = 0.0;
  std::vector<Atom> atoms_;  // sorted by x, duplicates merged
  std::vector<double> cum_;  // running cdf over atoms_
};

}  // namespace nlexp
