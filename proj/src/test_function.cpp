#include "nlexp/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "nlexp/errors.hpp"
#include "nlexp/rng.hpp"

namespace nlexp {

TestFunction::TestFunction(std::function<double(double)> f, int growth_order,
                           double lipschitz_scale, bool bounded,
                           std::string label, std::vector<double> breakpoints)
    : f_(std::move(f)),
      m_(growth_order),
      c_(lipschitz_scale),
      bounded_(bounded),
      label_(std::move(label)),
      breaks_(std::move(breakpoints)) {
  if (growth_order < 0)
    throw ValidationError("growth_order", "must be nonnegative");
  if (!(lipschitz_scale > 0.0))
    throw ValidationError("lipschitz_scale", "must be positive");
  std::sort(breaks_.begin(), breaks_.end());
  breaks_.erase(std::unique(breaks_.begin(), breaks_.end()), breaks_.end());
}

TestFunction TestFunction::negate() const {
  auto f = f_;
  return TestFunction([f](double x) { return -f(x); }, m_, c_, bounded_,
                      "-(" + label_ + ")", breaks_);
}

TestFunction TestFunction::scale(double lambda) const {
  auto f = f_;
  const double c = std::max(std::abs(lambda) * c_, 1e-300);
  return TestFunction([f, lambda](double x) { return lambda * f(x); }, m_, c,
                      bounded_, "scaled(" + label_ + ")", breaks_);
}

TestFunction TestFunction::plus(const TestFunction& other) const {
  auto f = f_;
  auto g = other.f_;
  std::vector<double> breaks = breaks_;
  breaks.insert(breaks.end(), other.breaks_.begin(), other.breaks_.end());
  return TestFunction([f, g](double x) { return f(x) + g(x); },
                      std::max(m_, other.m_), c_ + other.c_,
                      bounded_ && other.bounded_, label_ + "+" + other.label_,
                      std::move(breaks));
}

TestFunction TestFunction::plus_constant(double c) const {
  auto f = f_;
  return TestFunction([f, c](double x) { return f(x) + c; }, m_, c_, bounded_,
                      label_ + "+const", breaks_);
}

bool TestFunction::spot_check_lipschitz(double radius, int pairs,
                                        std::uint64_t seed) const {
  const std::uint64_t s = rng::derive_seed(seed, rng::Purpose::kSpotChecks);
  for (int i = 0; i < pairs; ++i) {
    const double x = (2.0 * rng::unit(s, 0, i) - 1.0) * radius;
    const double y = (2.0 * rng::unit(s, 1, i) - 1.0) * radius;
    const double lhs = std::abs(f_(x) - f_(y));
    const double rhs = c_ *
                       (1.0 + std::pow(std::abs(x), m_) +
                        std::pow(std::abs(y), m_)) *
                       std::abs(x - y);
    if (lhs > rhs * (1.0 + 1e-12) + 1e-12) return false;
  }
  return true;
}

TestFunction TestFunction::identity() {
  return TestFunction([](double x) { return x; }, 0, 1.0, false, "x");
}

TestFunction TestFunction::constant(double value) {
  return TestFunction([value](double) { return value; }, 0, 1.0, true,
                      "const");
}

TestFunction TestFunction::power(int degree) {
  if (degree < 1) return constant(1.0);
  return TestFunction([degree](double x) { return std::pow(x, degree); },
                      degree - 1, static_cast<double>(degree), false,
                      "x^" + std::to_string(degree));
}

TestFunction TestFunction::abs_value() {
  return TestFunction([](double x) { return std::abs(x); }, 0, 1.0, false,
                      "|x|", {0.0});
}

TestFunction TestFunction::exponential() {
  // exp is not in C_{l,Lip}; it is still a valid nondecreasing positive f
  // for the Markov checker over light-tailed laws.
  return TestFunction([](double x) { return std::exp(x); }, 0, 1.0, false,
                      "exp");
}

TestFunction TestFunction::logistic() {
  return TestFunction([](double x) { return 1.0 / (1.0 + std::exp(-x)); }, 0,
                      0.25, true, "logistic");
}

}  // namespace nlexp
