#pragma once

#include <cstddef>
#include <functional>

namespace nlexp {

struct QuadratureOptions {
  double abs_tol = 1e-8;
  std::size_t max_panels = std::size_t(1) << 20;
};

// Adaptive composite Gauss-Legendre integration of f over the finite
// interval [a, b]. Panels are bisected until the GL7/GL15 discrepancy meets
// the length-proportional share of abs_tol. Throws QuadratureError when the
// panel budget runs out first.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

}  // namespace nlexp
