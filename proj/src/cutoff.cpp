#include "nlexp/cutoff.hpp"

#include <cmath>
#include <string>

namespace nlexp {

double chi(int level, double x) {
  const double a = std::abs(x);
  if (a <= level) return 1.0;
  if (a >= level + 1.0) return 0.0;
  return level + 1.0 - a;
}

double chi_complement(int level, double x) { return 1.0 - chi(level, x); }

double truncate_value(int level, double x) { return x * chi(level, x); }

namespace {

std::vector<double> ramp_breakpoints(int level) {
  const double n = level;
  return {-(n + 1.0), -n, 0.0, n, n + 1.0};
}

}  // namespace

TestFunction truncation_fn(int level) {
  return TestFunction([level](double x) { return truncate_value(level, x); },
                      0, level + 2.0, true, "trunc" + std::to_string(level),
                      ramp_breakpoints(level));
}

TestFunction truncation_sq_fn(int level) {
  return TestFunction(
      [level](double x) {
        const double y = truncate_value(level, x);
        return y * y;
      },
      0, 2.0 * (level + 1.0) * (level + 2.0), true,
      "trunc_sq" + std::to_string(level), ramp_breakpoints(level));
}

TestFunction truncation_abs_fn(int level) {
  return TestFunction(
      [level](double x) { return std::abs(truncate_value(level, x)); }, 0,
      level + 2.0, true, "trunc_abs" + std::to_string(level),
      ramp_breakpoints(level));
}

}  // namespace nlexp
