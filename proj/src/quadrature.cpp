#include "nlexp/quadrature.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "nlexp/errors.hpp"

namespace nlexp {

namespace {

constexpr std::array<double, 7> kX7 = {
    -0.94910791234275849, -0.74153118559939446, -0.40584515137739718, 0.0,
    0.40584515137739718, 0.74153118559939446, 0.94910791234275849};
constexpr std::array<double, 7> kW7 = {
    0.12948496616887065, 0.27970539148927659, 0.38183005050511831,
    0.41795918367346896, 0.38183005050511831, 0.27970539148927659,
    0.12948496616887065};

constexpr std::array<double, 15> kX15 = {
    -0.98799251802048538, -0.93727339240070595, -0.84820658341042721,
    -0.72441773136017007, -0.57097217260853883, -0.39415134707756339,
    -0.20119409399743451, 0.0,                  0.20119409399743451,
    0.39415134707756339,  0.57097217260853883,  0.72441773136017007,
    0.84820658341042721,  0.93727339240070595,  0.98799251802048538};
constexpr std::array<double, 15> kW15 = {
    0.030753241996118647, 0.070366047488108069, 0.10715922046717177,
    0.13957067792615391,  0.16626920581699378,  0.18616100001556188,
    0.19843148532711125,  0.2025782419255609,   0.19843148532711125,
    0.18616100001556188,  0.16626920581699378,  0.13957067792615391,
    0.10715922046717177,  0.070366047488108069, 0.030753241996118647};

struct Panel {
  double a, b;
};

template <std::size_t N>
double gauss(const std::function<double(double)>& f, double a, double b,
             const std::array<double, N>& xs, const std::array<double, N>& ws) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < N; ++i) acc += ws[i] * f(mid + half * xs[i]);
  return acc * half;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  const double total_len = b - a;
  std::vector<Panel> stack{{a, b}};
  double sum = 0.0;
  std::size_t panels = 0;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    if (++panels > opts.max_panels) {
      throw QuadratureError("quadrature panel budget exhausted before tolerance");
    }
    const double coarse = gauss(f, p.a, p.b, kX7, kW7);
    const double fine = gauss(f, p.a, p.b, kX15, kW15);
    const double err = std::abs(fine - coarse);
    const double share = opts.abs_tol * ((p.b - p.a) / total_len);
    const double width_floor = total_len * 0x1.0p-48;
    if (err <= share || (p.b - p.a) <= width_floor) {
      sum += fine;
    } else {
      const double mid = 0.5 * (p.a + p.b);
      // Push right first so the left half is processed next; accumulation
      // then runs left to right, which keeps the summation order fixed.
      stack.push_back({mid, p.b});
      stack.push_back({p.a, mid});
    }
  }
  return sign * sum;
}

}  // namespace nlexp
