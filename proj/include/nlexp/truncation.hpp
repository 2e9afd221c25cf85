#pragma once

#include <span>
#include <vector>

#include "nlexp/cutoff.hpp"
#include "nlexp/sequence_model.hpp"

namespace nlexp {

// Upper / lower expectation of the truncated coordinate Y = X chi_n(|X|).
// The truncated integrand is bounded, so every supported family including
// Cauchy is admissible.
double truncated_mean_upper(const AmbiguitySet& amb, int level,
                            const QuadratureOptions& opts = {});
double truncated_mean_lower(const AmbiguitySet& amb, int level,
                            const QuadratureOptions& opts = {});

struct TruncatedMeans {
  int level = 0;
  std::vector<double> mu_plus;   // per coordinate k = 1..n
  std::vector<double> mu_minus;
  double mu_bar = 0.0;           // Cesaro average of mu_plus
  double mu_under = 0.0;         // Cesaro average of mu_minus
};

TruncatedMeans mu_bounds(const SequenceModel& model, int n,
                         const QuadratureOptions& opts = {});

// Upper tail capacity of one coordinate: V(|X| > t).
double gamma_hat(const AmbiguitySet& amb, double t);

// psi_n(y) = sum_{k<=n} y V(|X_k| > n y). For i.i.d. rules this collapses
// to n y gamma_hat(n y).
double psi(const SequenceModel& model, int n, double y);

struct PsiProfile {
  int level = 0;
  std::vector<double> y;
  std::vector<double> value;
  double integral = 0.0;  // trapezoid over the grid plus the [0, y_1] wedge
};

// Default grid: geometric through the steep region near zero, then uniform
// up to one. 129 points.
std::vector<double> default_y_grid();

PsiProfile psi_profile(const SequenceModel& model, int n,
                       std::span<const double> grid);

// Profile assembled from precomputed values (synthetic families in tests).
PsiProfile make_profile(int level, std::span<const double> grid,
                        std::span<const double> values);

struct PsiVerdict {
  bool pass = false;
  int worst_n = 0;
  double worst_y = 0.0;
  double worst_value = 0.0;
};

// Finite surrogate for "psi_n -> 0 pointwise on (0,1]": the largest
// scheduled n must stay below tol across the grid AND the per-y values must
// be nonincreasing across the last three scheduled n. A grid point only
// enters the asymptotic regime once n y is past the law's central bulk, so
// the grid should be chosen for the n range under study.
PsiVerdict check_psi_vanishes(const SequenceModel& model,
                              std::span<const int> n_schedule,
                              std::span<const double> grid, double tol);

struct UiVerdict {
  bool pass = false;
  double worst_excess = 0.0;  // sup_n int psi_n 1(psi_n > M) at the last M
  double at_level = 0.0;
};

// Finite surrogate for uniform integrability of the computed profile
// family: the excess integral above level M, maximized over profiles, must
// fall below tol at the largest scheduled M.
UiVerdict check_uniform_integrability(std::span<const PsiProfile> profiles,
                                      std::span<const double> m_schedule,
                                      double tol);

struct TrendVerdict {
  bool pass = false;
  std::vector<double> values;
};

// Classical first-moment-free condition t (F(-t) + 1 - F(t)) -> 0,
// evaluated on a finite schedule: passes when the last value is below tol
// and the last three values are nonincreasing.
TrendVerdict kolmogorov_condition(const Distribution& dist,
                                  std::span<const double> t_schedule,
                                  double tol);

// Upper cross-moment of truncated coordinates i != k, centered at the upper
// truncated means. Product dependence makes this identically zero by the
// independence factorization; JointPairs models evaluate the exact sup over
// the pair's joint members.
double kappa(const SequenceModel& model, int n, std::size_t i, std::size_t k,
             const QuadratureOptions& opts = {});

struct CesaroResult {
  double value = 0.0;
  bool pass = false;
};

// (1/n^2) (sum_{i != k} kappa)^+ against tol.
CesaroResult cesaro_condition(const SequenceModel& model, int n, double tol,
                              const QuadratureOptions& opts = {});

}  // namespace nlexp
