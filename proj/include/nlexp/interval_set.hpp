#pragma once

#include <limits>
#include <vector>

namespace nlexp {

// One real interval with independently open/closed finite endpoints.
// Infinite endpoints are always treated as open.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool empty() const;
  bool contains(double x) const;
};

// A finite disjoint union of intervals. The constructor normalizes: parts
// are sorted, overlapping or touching parts are merged, empty parts dropped.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);

  static IntervalSet empty_set() { return IntervalSet(); }
  static IntervalSet real_line();
  static IntervalSet point(double x);
  static IntervalSet interval(double lo, double hi, bool lo_closed, bool hi_closed);
  static IntervalSet at_least(double x);           // [x, +inf)
  static IntervalSet at_most(double x);            // (-inf, x]
  static IntervalSet greater_than(double x);       // (x, +inf)
  static IntervalSet less_than(double x);          // (-inf, x)
  static IntervalSet abs_greater_than(double t);   // (-inf,-t) u (t,+inf)

  bool empty() const { return parts_.empty(); }
  bool contains(double x) const;
  IntervalSet complement() const;
  const std::vector<Interval>& parts() const { return parts_; }

 private:
  std::vector<Interval> parts_;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace nlexp
