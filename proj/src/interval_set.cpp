#include "nlexp/interval_set.hpp"

#include <algorithm>
#include <cmath>

namespace nlexp {

bool Interval::empty() const {
  if (std::isinf(lo) && lo > 0) return true;
  if (std::isinf(hi) && hi < 0) return true;
  if (lo > hi) return true;
  if (lo == hi) return lo_closed && hi_closed ? false : true;
  return false;
}

bool Interval::contains(double x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !lo_closed) return false;
  if (x == hi && !hi_closed) return false;
  return true;
}

namespace {

Interval sanitize(Interval iv) {
  if (std::isinf(iv.lo)) iv.lo_closed = false;
  if (std::isinf(iv.hi)) iv.hi_closed = false;
  return iv;
}

// Two sorted intervals merge when they overlap or touch without a gap.
bool mergeable(const Interval& a, const Interval& b) {
  if (b.lo < a.hi) return true;
  if (b.lo == a.hi) return a.hi_closed || b.lo_closed;
  return false;
}

}  // namespace

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  std::vector<Interval> kept;
  kept.reserve(parts.size());
  for (const Interval& p : parts) {
    Interval s = sanitize(p);
    if (!s.empty()) kept.push_back(s);
  }
  std::sort(kept.begin(), kept.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  for (const Interval& p : kept) {
    if (!parts_.empty() && mergeable(parts_.back(), p)) {
      Interval& last = parts_.back();
      if (p.hi > last.hi) {
        last.hi = p.hi;
        last.hi_closed = p.hi_closed;
      } else if (p.hi == last.hi) {
        last.hi_closed = last.hi_closed || p.hi_closed;
      }
    } else {
      parts_.push_back(p);
    }
  }
}

IntervalSet IntervalSet::real_line() {
  return IntervalSet({Interval{-kInf, kInf, false, false}});
}

IntervalSet IntervalSet::point(double x) {
  return IntervalSet({Interval{x, x, true, true}});
}

IntervalSet IntervalSet::interval(double lo, double hi, bool lo_closed, bool hi_closed) {
  return IntervalSet({Interval{lo, hi, lo_closed, hi_closed}});
}

IntervalSet IntervalSet::at_least(double x) {
  return IntervalSet({Interval{x, kInf, true, false}});
}

IntervalSet IntervalSet::at_most(double x) {
  return IntervalSet({Interval{-kInf, x, false, true}});
}

IntervalSet IntervalSet::greater_than(double x) {
  return IntervalSet({Interval{x, kInf, false, false}});
}

IntervalSet IntervalSet::less_than(double x) {
  return IntervalSet({Interval{-kInf, x, false, false}});
}

IntervalSet IntervalSet::abs_greater_than(double t) {
  return IntervalSet({Interval{-kInf, -t, false, false},
                      Interval{t, kInf, false, false}});
}

bool IntervalSet::contains(double x) const {
  for (const Interval& p : parts_) {
    if (x < p.lo) break;
    if (p.contains(x)) return true;
  }
  return false;
}

IntervalSet IntervalSet::complement() const {
  if (parts_.empty()) return real_line();
  std::vector<Interval> out;
  double cursor = -kInf;
  bool cursor_closed = false;
  for (const Interval& p : parts_) {
    Interval gap{cursor, p.lo, cursor_closed, !p.lo_closed};
    if (!gap.empty()) out.push_back(gap);
    cursor = p.hi;
    cursor_closed = !p.hi_closed;
  }
  Interval tail{cursor, kInf, cursor_closed, false};
  if (!tail.empty()) out.push_back(tail);
  return IntervalSet(std::move(out));
}

}  // namespace nlexp
