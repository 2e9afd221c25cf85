#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nlexp {

// A scalar test function with declared locally-Lipschitz growth data:
// |phi(x) - phi(y)| <= C (1 + |x|^m + |y|^m) |x - y|. The constants are
// declared by the constructor, not derived; spot_check_lipschitz probes the
// declaration on random pairs. `bounded` marks functions with a finite sup
// norm, which widens the set of admissible heavy-tailed integrators.
class TestFunction {
 public:
  TestFunction(std::function<double(double)> f, int growth_order,
               double lipschitz_scale, bool bounded = false,
               std::string label = "phi",
               std::vector<double> breakpoints = {});

  double operator()(double x) const { return f_(x); }
  int growth_order() const { return m_; }
  double lipschitz_scale() const { return c_; }
  bool bounded() const { return bounded_; }
  const std::string& label() const { return label_; }
  // Kinks and support edges. Integrators split panels here: a compactly
  // supported ramp can otherwise hide between the outermost Gauss node and
  // the domain endpoint and be integrated as zero.
  const std::vector<double>& breakpoints() const { return breaks_; }

  TestFunction negate() const;
  TestFunction scale(double lambda) const;
  TestFunction plus(const TestFunction& other) const;
  TestFunction plus_constant(double c) const;

  // Checks the declared Lipschitz inequality on `pairs` random pairs drawn
  // from [-radius, radius]. Returns false on the first violation.
  bool spot_check_lipschitz(double radius, int pairs, std::uint64_t seed) const;

  static TestFunction identity();
  static TestFunction constant(double value);
  static TestFunction power(int degree);
  static TestFunction abs_value();
  static TestFunction exponential();
  static TestFunction logistic();  // bounded, increasing, positive

 private:
  std::function<double(double)> f_;
  int m_;
  double c_;
  bool bounded_;
  std::string label_;
  std::vector<double> breaks_;
};

}  // namespace nlexp
