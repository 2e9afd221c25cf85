#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlexp/mc_kernels.hpp"
#include "nlexp/path_event.hpp"
#include "nlexp/truncation.hpp"

namespace nlexp {

struct EstimateBudget {
  std::size_t mc_reps = 10'000;   // >= 100 for reported estimates
  std::size_t restarts = 2;      // random restarts on top of directed starts
  std::size_t max_passes = 4;    // coordinate-ascent sweeps per start
  std::uint64_t seed = 1;
};

// One independent product draw of coordinates 1..n under the selected
// members. Deterministic in (seed, selection, n, rep); coordinate k consumes
// only its own substream, so selections at other coordinates never shift it.
std::vector<double> sample_path(const SequenceModel& model,
                                const ScenarioSelection& selection, int n,
                                std::uint64_t seed, std::uint64_t rep = 0);

struct ProbEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t reps = 0;
};

// Monte Carlo frequency of the event under one selected product measure.
// The window thresholds come from mu_bounds(model, n) unless given.
ProbEstimate event_probability_under(const SequenceModel& model,
                                     const ScenarioSelection& selection,
                                     const PathEvent& event, int n,
                                     const EstimateBudget& budget,
                                     const TruncatedMeans* means = nullptr);

struct CapacityEstimate {
  double v_hat = 0.0;
  double std_err = 0.0;
  std::uint64_t hits = 0;
  ScenarioSelection best;
  std::size_t starts_used = 0;
  // Some start was still improving when max_passes ran out; the search was
  // budget-limited rather than converged.
  bool passes_exhausted = false;
};

// Lower-bound-style estimate of V(event) over product selections: greedy
// per-coordinate member swaps under common random numbers, from directed
// (truncated-mean argmax/argmin) starts plus random restarts. The returned
// estimate is a fresh evaluation of the best selection found; search
// optimality is not guaranteed.
CapacityEstimate estimate_capacity_V(const SequenceModel& model,
                                     const PathEvent& event, int n,
                                     const EstimateBudget& budget,
                                     const TruncatedMeans* means = nullptr);

struct LowerCapacityEstimate {
  double v_hat = 0.0;
  double std_err = 0.0;
  CapacityEstimate complement;  // the OutsideBand search backing the value
};

// v(band) = 1 - V(outside band); the complement is maximized jointly as a
// single path predicate, sharing one search run.
LowerCapacityEstimate estimate_capacity_v(const SequenceModel& model,
                                          const PathEvent& band_event, int n,
                                          const EstimateBudget& budget,
                                          const TruncatedMeans* means = nullptr);

// Exact V over product selections of a discrete-atoms-only model by full
// outcome enumeration. Throws TooLargeError when the total enumeration size
// exceeds max_outcomes.
double brute_force_capacity(const SequenceModel& model, const PathEvent& event,
                            int n, const TruncatedMeans* means = nullptr,
                            double max_outcomes = 1e7,
                            ScenarioSelection* arg_selection = nullptr);

struct ConvergenceRow {
  int n = 0;
  double epsilon = 0.0;
  ProbEstimate upper;  // V-hat of UpperExceed
  ProbEstimate lower;  // V-hat of LowerExceed
  double v_band = 0.0;
  double band_std_err = 0.0;
  ScenarioSelection best_upper, best_lower, best_outside;
  bool budget_exhausted = false;  // any of the three searches ran out of passes
  double seconds = 0.0;
};

struct ConvergenceReport {
  double epsilon = 0.0;
  std::vector<ConvergenceRow> rows;
  PsiVerdict psi;
  UiVerdict ui;
};

struct ConditionSpec {
  std::vector<double> y_grid;       // empty -> default_y_grid()
  std::vector<double> m_schedule{1.0, 2.0, 4.0, 8.0};
  double psi_tol = 0.1;
  double ui_tol = 0.1;
};

// The Theorem-1 experiment: per scheduled n, estimate V-hat of both exceed
// events and v-hat of the band, with the psi / uniform-integrability
// verdicts attached.
ConvergenceReport convergence_experiment(const SequenceModel& model,
                                         double epsilon,
                                         std::span<const int> n_schedule,
                                         const EstimateBudget& budget,
                                         const ConditionSpec& conditions = {});

struct ProofBound {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct ProofChainReport {
  int n = 0;
  std::vector<ProofBound> bounds;
  bool all_hold = false;
};

// Deterministic verification of the bound chain behind the convergence
// conclusions at one level n:
//   ssprime   sum_k V(|X_k|>n) vs psi_n(1)
//   vsprime   (1/n^2) sum_k E(Y-mu+)^2 vs its subadditive three-term split
//   bound_i   (1/n^2) sum_k E[Y^2] vs 2 (1+1/n)^2 int_0^1 psi_n
//   bound_ii  (1/n^2) sum_k (mu+)^2 vs (1/n^2) sum_k E[Y^2]
//   bound_iii (1/n^2) sum_k E[-2 mu+ Y] vs (2/n^2) sum_k E[Y^2]
// Every lhs must stay below rhs + 1e-7; a violation throws
// BoundViolatedError since it can only come from an implementation bug.
ProofChainReport proof_chain_check(const SequenceModel& model, int n,
                                   const QuadratureOptions& opts = {});

}  // namespace nlexp
