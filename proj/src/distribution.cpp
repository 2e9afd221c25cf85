#include "nlexp/distribution.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

#include "nlexp/errors.hpp"

namespace nlexp {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kPi = std::numbers::pi;

double normal_cdf(double z) { return 0.5 * std::erfc(-z * std::numbers::sqrt2 / 2.0); }

// Solves x * ln(x) = c for x >= e by bracketed bisection down to adjacent
// doubles (well past the 1e-12 contract; quadrature needs the inverse at
// the noise floor, or panel error estimates never settle).
double solve_x_log_x(double c) {
  if (c <= kE) return kE;
  const double guess = c / std::log(c);
  double lo = std::max(kE, 0.25 * guess);
  double hi = 4.0 * guess + kE;
  while (lo * std::log(lo) > c) lo = std::max(kE, 0.5 * lo);
  while (hi * std::log(hi) < c) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (mid * std::log(mid) < c) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace

double standard_normal_quantile(double u) {
  assert(u > 0.0 && u < 1.0);
  // Acklam's rational approximation, then one Halley refinement.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (u < plow) {
    const double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (u <= 1.0 - plow) {
    const double q = u - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - u;
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
  const double step = e / pdf;
  x -= step / (1.0 + 0.5 * x * step);
  return x;
}

std::string to_string(DistKind kind) {
  switch (kind) {
    case DistKind::kNormal: return "normal";
    case DistKind::kUniform: return "uniform";
    case DistKind::kTwoPoint: return "two_point";
    case DistKind::kDiscreteAtoms: return "discrete_atoms";
    case DistKind::kPareto: return "pareto";
    case DistKind::kCauchy: return "cauchy";
    case DistKind::kSymmetricLogTail: return "symmetric_log_tail";
  }
  return "unknown";
}

Distribution::Distribution(DistKind kind, double a, double b, double c)
    : kind_(kind), a_(a), b_(b), c_(c) {}

Distribution Distribution::normal(double mean, double stddev) {
  if (!(stddev > 0.0)) throw ValidationError("stddev", "must be positive");
  if (!std::isfinite(mean)) throw ValidationError("mean", "must be finite");
  return Distribution(DistKind::kNormal, mean, stddev, 0.0);
}

Distribution Distribution::uniform(double lo, double hi) {
  if (!(hi > lo)) throw ValidationError("hi", "must exceed lo");
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw ValidationError("uniform", "endpoints must be finite");
  return Distribution(DistKind::kUniform, lo, hi, 0.0);
}

Distribution Distribution::two_point(double lo, double hi, double p_hi) {
  if (!(lo < hi)) throw ValidationError("two_point", "lo must be below hi");
  if (!(p_hi >= 0.0 && p_hi <= 1.0))
    throw ValidationError("p_hi", "must lie in [0,1]");
  Distribution d(DistKind::kTwoPoint, lo, hi, p_hi);
  d.atoms_ = {{lo, 1.0 - p_hi}, {hi, p_hi}};
  d.cum_ = {1.0 - p_hi, 1.0};
  return d;
}

Distribution Distribution::discrete_atoms(std::vector<Atom> atoms) {
  if (atoms.empty()) throw ValidationError("atoms", "must be nonempty");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.x < y.x; });
  std::vector<Atom> merged;
  for (const Atom& at : atoms) {
    if (!std::isfinite(at.x)) throw ValidationError("atoms", "atom must be finite");
    if (at.p < 0.0) throw ValidationError("atoms", "probabilities must be >= 0");
    if (!merged.empty() && merged.back().x == at.x) {
      merged.back().p += at.p;
    } else {
      merged.push_back(at);
    }
  }
  double total = 0.0;
  for (const Atom& at : merged) total += at.p;
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("atoms", "probabilities must sum to 1 within 1e-12");
  Distribution d(DistKind::kDiscreteAtoms, 0.0, 0.0, 0.0);
  d.atoms_ = std::move(merged);
  double run = 0.0;
  for (const Atom& at : d.atoms_) {
    run += at.p;
    d.cum_.push_back(run);
  }
  d.cum_.back() = 1.0;
  return d;
}

Distribution Distribution::pareto(double shape, double scale) {
  if (!(shape > 0.0)) throw ValidationError("shape", "must be positive");
  if (!(scale > 0.0)) throw ValidationError("scale", "must be positive");
  return Distribution(DistKind::kPareto, shape, scale, 0.0);
}

Distribution Distribution::cauchy(double location, double scale) {
  if (!(scale > 0.0)) throw ValidationError("scale", "must be positive");
  if (!std::isfinite(location)) throw ValidationError("location", "must be finite");
  return Distribution(DistKind::kCauchy, location, scale, 0.0);
}

Distribution Distribution::symmetric_log_tail() {
  return Distribution(DistKind::kSymmetricLogTail, 0.0, 0.0, 0.0);
}

double Distribution::cdf(double x) const {
  if (std::isnan(x)) return 0.0;
  switch (kind_) {
    case DistKind::kNormal:
      return normal_cdf((x - a_) / b_);
    case DistKind::kUniform:
      if (x < a_) return 0.0;
      if (x >= b_) return 1.0;
      return (x - a_) / (b_ - a_);
    case DistKind::kTwoPoint:
    case DistKind::kDiscreteAtoms: {
      double acc = 0.0;
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (atoms_[i].x > x) break;
        acc = cum_[i];
      }
      return acc;
    }
    case DistKind::kPareto:
      if (x <= b_) return 0.0;
      return 1.0 - std::pow(b_ / x, a_);
    case DistKind::kCauchy:
      return 0.5 + std::atan((x - a_) / b_) / kPi;
    case DistKind::kSymmetricLogTail:
      if (x <= -kE) return kE / (-2.0 * x * std::log(-x));
      if (x >= kE) return 1.0 - kE / (2.0 * x * std::log(x));
      return 0.5;
  }
  return 0.0;
}

double Distribution::mass(double x) const {
  if (!discrete_law()) return 0.0;
  auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), x,
      [](const Atom& at, double v) { return at.x < v; });
  if (it != atoms_.end() && it->x == x) return it->p;
  return 0.0;
}

double Distribution::abs_tail(double t) const {
  if (kind_ == DistKind::kSymmetricLogTail) {
    if (t <= kE) return 1.0;
    return std::min(1.0, kE / (t * std::log(t)));
  }
  return prob(IntervalSet::abs_greater_than(t));
}

double Distribution::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0))
    throw ValidationError("u", "quantile argument must lie in (0,1)");
  if (u <= 0.5) return quantile_lower_tail(u);
  return quantile_upper_tail(1.0 - u);
}

double Distribution::quantile_lower_tail(double q) const {
  if (!(q > 0.0 && q <= 0.5))
    throw ValidationError("q", "tail mass must lie in (0, 1/2]");
  switch (kind_) {
    case DistKind::kNormal:
      return a_ + b_ * standard_normal_quantile(q);
    case DistKind::kUniform:
      return a_ + q * (b_ - a_);
    case DistKind::kTwoPoint:
    case DistKind::kDiscreteAtoms: {
      auto it = std::lower_bound(cum_.begin(), cum_.end(), q);
      const std::size_t idx =
          std::min<std::size_t>(it - cum_.begin(), atoms_.size() - 1);
      return atoms_[idx].x;
    }
    case DistKind::kPareto:
      return b_ * std::pow(1.0 - q, -1.0 / a_);
    case DistKind::kCauchy:
      // tan(pi (q - 1/2)) = -cot(pi q); the cotangent form keeps extreme
      // tails well conditioned.
      if (q < 0.25) return a_ - b_ / std::tan(kPi * q);
      return a_ + b_ * std::tan(kPi * (q - 0.5));
    case DistKind::kSymmetricLogTail:
      return -solve_x_log_x(kE / (2.0 * q));
  }
  return 0.0;
}

double Distribution::quantile_upper_tail(double q) const {
  if (!(q > 0.0 && q <= 0.5))
    throw ValidationError("q", "tail mass must lie in (0, 1/2]");
  switch (kind_) {
    case DistKind::kNormal:
      return a_ - b_ * standard_normal_quantile(q);
    case DistKind::kUniform:
      return b_ - q * (b_ - a_);
    case DistKind::kTwoPoint:
    case DistKind::kDiscreteAtoms: {
      // Atom masses dwarf floating-point granularity, so routing through
      // u = 1 - q is exact enough for the generalized inverse.
      const double u = 1.0 - q;
      auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
      const std::size_t idx =
          std::min<std::size_t>(it - cum_.begin(), atoms_.size() - 1);
      return atoms_[idx].x;
    }
    case DistKind::kPareto:
      return b_ * std::pow(q, -1.0 / a_);
    case DistKind::kCauchy:
      if (q < 0.25) return a_ + b_ / std::tan(kPi * q);
      return a_ + b_ * std::tan(kPi * (0.5 - q));
    case DistKind::kSymmetricLogTail:
      return solve_x_log_x(kE / (2.0 * q));
  }
  return 0.0;
}

double Distribution::prob(const Interval& iv) const {
  if (iv.empty()) return 0.0;
  if (discrete_law()) {
    // Single ordered scan keeps the summation order identical to plain
    // atom-by-atom enumeration, so oracles can match bitwise.
    double acc = 0.0;
    for (const Atom& at : atoms_) {
      if (iv.contains(at.x)) acc += at.p;
    }
    return acc;
  }
  const double fb = std::isinf(iv.hi) ? 1.0 : cdf(iv.hi);
  const double fa = std::isinf(iv.lo) ? 0.0 : cdf(iv.lo);
  double p = fb - fa;
  if (!iv.hi_closed && !std::isinf(iv.hi)) p -= mass(iv.hi);
  if (iv.lo_closed && !std::isinf(iv.lo)) p += mass(iv.lo);
  return std::clamp(p, 0.0, 1.0);
}

double Distribution::prob(const IntervalSet& set) const {
  if (discrete_law()) {
    double acc = 0.0;
    for (const Atom& at : atoms_) {
      if (set.contains(at.x)) acc += at.p;
    }
    return acc;
  }
  double acc = 0.0;
  for (const Interval& iv : set.parts()) acc += prob(iv);
  return std::clamp(acc, 0.0, 1.0);
}

bool Distribution::discrete_law() const {
  return kind_ == DistKind::kTwoPoint || kind_ == DistKind::kDiscreteAtoms;
}

const std::vector<Atom>& Distribution::atoms() const {
  assert(discrete_law());
  return atoms_;
}

std::pair<double, double> Distribution::support() const {
  switch (kind_) {
    case DistKind::kNormal:
    case DistKind::kCauchy:
    case DistKind::kSymmetricLogTail:
      return {-kInf, kInf};
    case DistKind::kUniform:
      return {a_, b_};
    case DistKind::kTwoPoint:
    case DistKind::kDiscreteAtoms:
      return {atoms_.front().x, atoms_.back().x};
    case DistKind::kPareto:
      return {b_, kInf};
  }
  return {-kInf, kInf};
}

double Distribution::tail_power() const {
  switch (kind_) {
    case DistKind::kPareto:
      return a_;
    case DistKind::kCauchy:
    case DistKind::kSymmetricLogTail:
      return 1.0;
    default:
      return kInf;
  }
}

double Distribution::mean() const {
  assert(kind_ == DistKind::kNormal);
  return a_;
}
double Distribution::stddev() const {
  assert(kind_ == DistKind::kNormal);
  return b_;
}
double Distribution::lo() const {
  assert(kind_ == DistKind::kUniform || kind_ == DistKind::kTwoPoint);
  return a_;
}
double Distribution::hi() const {
  assert(kind_ == DistKind::kUniform || kind_ == DistKind::kTwoPoint);
  return b_;
}
double Distribution::p_hi() const {
  assert(kind_ == DistKind::kTwoPoint);
  return c_;
}
double Distribution::shape() const {
  assert(kind_ == DistKind::kPareto);
  return a_;
}
double Distribution::scale() const {
  assert(kind_ == DistKind::kPareto || kind_ == DistKind::kCauchy);
  return b_;
}
double Distribution::location() const {
  assert(kind_ == DistKind::kCauchy);
  return a_;
}

}  // namespace nlexp
