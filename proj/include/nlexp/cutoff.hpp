#pragma once

#include "nlexp/test_function.hpp"

namespace nlexp {

// Smooth (Lipschitz) cutoff at level n: 1 on |x| <= n, 0 on |x| >= n+1,
// linear ramp in between. 1-Lipschitz in |x|.
double chi(int level, double x);

// 1 - chi(level, x); dominated pointwise by the indicator of {|x| > level}.
double chi_complement(int level, double x);

// x * chi(level, |x|): the smoothly truncated value. Bounded by level in
// magnitude, equal to x on the plateau, zero beyond level+1.
double truncate_value(int level, double x);

// Truncation functionals packaged as declared test functions.
TestFunction truncation_fn(int level);         // x * chi_n(|x|)
TestFunction truncation_sq_fn(int level);      // (x * chi_n(|x|))^2
TestFunction truncation_abs_fn(int level);     // |x| * chi_n(|x|)

}  // namespace nlexp
