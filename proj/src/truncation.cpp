#include "nlexp/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlexp/errors.hpp"

namespace nlexp {

double truncated_mean_upper(const AmbiguitySet& amb, int level,
                            const QuadratureOptions& opts) {
  return upper_expect(amb, truncation_fn(level), opts).value;
}

double truncated_mean_lower(const AmbiguitySet& amb, int level,
                            const QuadratureOptions& opts) {
  return lower_expect(amb, truncation_fn(level), opts).value;
}

TruncatedMeans mu_bounds(const SequenceModel& model, int n,
                         const QuadratureOptions& opts) {
  if (n < 1) throw ValidationError("n", "level must be >= 1");
  if (model.max_coords() < static_cast<std::size_t>(n))
    throw ValidationError("n", "model provides fewer coordinates than n");
  TruncatedMeans tm;
  tm.level = n;
  tm.mu_plus.resize(n);
  tm.mu_minus.resize(n);
  if (model.iid_rule()) {
    const double up = truncated_mean_upper(model.coord(1), n, opts);
    const double lo = truncated_mean_lower(model.coord(1), n, opts);
    std::fill(tm.mu_plus.begin(), tm.mu_plus.end(), up);
    std::fill(tm.mu_minus.begin(), tm.mu_minus.end(), lo);
  } else {
    for (int k = 1; k <= n; ++k) {
      tm.mu_plus[k - 1] = truncated_mean_upper(model.coord(k), n, opts);
      tm.mu_minus[k - 1] = truncated_mean_lower(model.coord(k), n, opts);
    }
  }
  double up_sum = 0.0, lo_sum = 0.0;
  for (int k = 0; k < n; ++k) {
    up_sum += tm.mu_plus[k];
    lo_sum += tm.mu_minus[k];
  }
  tm.mu_bar = up_sum / n;
  tm.mu_under = lo_sum / n;
  return tm;
}

double gamma_hat(const AmbiguitySet& amb, double t) {
  if (!(t > 0.0)) throw ValidationError("t", "must be positive");
  double best = 0.0;
  for (const Distribution& member : amb.members()) {
    best = std::max(best, member.abs_tail(t));
  }
  return best;
}

double psi(const SequenceModel& model, int n, double y) {
  if (!(y > 0.0 && y <= 1.0))
    throw ValidationError("y", "must lie in (0,1]");
  if (model.max_coords() < static_cast<std::size_t>(n))
    throw ValidationError("n", "model provides fewer coordinates than n");
  if (model.iid_rule()) {
    return n * y * gamma_hat(model.coord(1), n * y);
  }
  double acc = 0.0;
  for (int k = 1; k <= n; ++k) {
    acc += y * gamma_hat(model.coord(k), n * y);
  }
  return acc;
}

std::vector<double> default_y_grid() {
  std::vector<double> grid;
  grid.reserve(129);
  // 33 geometric points across [1e-4, 0.1], then 96 uniform steps to 1.
  for (int i = 0; i <= 32; ++i) {
    grid.push_back(1e-4 * std::pow(1e3, i / 32.0));
  }
  for (int j = 1; j <= 96; ++j) {
    grid.push_back(0.1 + 0.9 * j / 96.0);
  }
  grid.back() = 1.0;
  return grid;
}

namespace {

double trapezoid_with_origin_wedge(std::span<const double> y,
                                   std::span<const double> v) {
  double acc = 0.5 * y.front() * v.front();  // wedge from (0,0); <= n y^2 / 2
  for (std::size_t i = 1; i < y.size(); ++i) {
    acc += 0.5 * (v[i - 1] + v[i]) * (y[i] - y[i - 1]);
  }
  return acc;
}

void validate_grid(std::span<const double> grid) {
  if (grid.empty()) throw ValidationError("grid", "must be nonempty");
  double prev = 0.0;
  for (double y : grid) {
    if (!(y > prev)) throw ValidationError("grid", "must be sorted strictly increasing in (0,1]");
    prev = y;
  }
  if (grid.back() > 1.0) throw ValidationError("grid", "points must be <= 1");
}

}  // namespace

PsiProfile psi_profile(const SequenceModel& model, int n,
                       std::span<const double> grid) {
  validate_grid(grid);
  PsiProfile profile;
  profile.level = n;
  profile.y.assign(grid.begin(), grid.end());
  profile.value.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    profile.value[i] = psi(model, n, grid[i]);
  }
  profile.integral = trapezoid_with_origin_wedge(profile.y, profile.value);
  return profile;
}

PsiProfile make_profile(int level, std::span<const double> grid,
                        std::span<const double> values) {
  validate_grid(grid);
  if (grid.size() != values.size())
    throw ValidationError("values", "must match grid size");
  PsiProfile profile;
  profile.level = level;
  profile.y.assign(grid.begin(), grid.end());
  profile.value.assign(values.begin(), values.end());
  profile.integral = trapezoid_with_origin_wedge(profile.y, profile.value);
  return profile;
}

PsiVerdict check_psi_vanishes(const SequenceModel& model,
                              std::span<const int> n_schedule,
                              std::span<const double> grid, double tol) {
  if (n_schedule.empty()) throw ValidationError("n_schedule", "must be nonempty");
  for (std::size_t i = 1; i < n_schedule.size(); ++i) {
    if (n_schedule[i] <= n_schedule[i - 1])
      throw ValidationError("n_schedule", "must be strictly increasing");
  }
  validate_grid(grid);

  const std::size_t tail =
      std::min<std::size_t>(3, n_schedule.size());
  std::vector<std::vector<double>> last_rows;
  for (std::size_t s = n_schedule.size() - tail; s < n_schedule.size(); ++s) {
    std::vector<double> row(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      row[i] = psi(model, n_schedule[s], grid[i]);
    }
    last_rows.push_back(std::move(row));
  }

  PsiVerdict verdict;
  verdict.worst_n = n_schedule.back();
  const std::vector<double>& final_row = last_rows.back();
  std::size_t worst_idx = 0;
  for (std::size_t i = 0; i < final_row.size(); ++i) {
    if (final_row[i] > final_row[worst_idx]) worst_idx = i;
  }
  verdict.worst_y = grid[worst_idx];
  verdict.worst_value = final_row[worst_idx];

  // Per-y trend over the last three levels. A point whose final value has
  // already collapsed to zero needs no trend.
  bool decreasing = true;
  for (std::size_t i = 0; i < grid.size() && decreasing; ++i) {
    if (final_row[i] <= 1e-12) continue;
    for (std::size_t r = 1; r < last_rows.size(); ++r) {
      if (last_rows[r][i] > last_rows[r - 1][i] + 1e-12) {
        decreasing = false;
        break;
      }
    }
  }
  verdict.pass = verdict.worst_value < tol && decreasing;
  return verdict;
}

UiVerdict check_uniform_integrability(std::span<const PsiProfile> profiles,
                                      std::span<const double> m_schedule,
                                      double tol) {
  if (profiles.empty()) throw ValidationError("profiles", "must be nonempty");
  if (m_schedule.empty()) throw ValidationError("M_schedule", "must be nonempty");
  for (const PsiProfile& p : profiles) {
    if (p.y != profiles.front().y)
      throw ValidationError("profiles", "must share one grid");
  }
  for (std::size_t i = 1; i < m_schedule.size(); ++i) {
    if (m_schedule[i] <= m_schedule[i - 1])
      throw ValidationError("M_schedule", "must be strictly increasing");
  }
  UiVerdict verdict;
  for (double m : m_schedule) {
    double sup_excess = 0.0;
    for (const PsiProfile& p : profiles) {
      std::vector<double> clipped(p.value.size());
      for (std::size_t i = 0; i < p.value.size(); ++i) {
        clipped[i] = p.value[i] > m ? p.value[i] : 0.0;
      }
      sup_excess = std::max(
          sup_excess, trapezoid_with_origin_wedge(p.y, clipped));
    }
    verdict.worst_excess = sup_excess;
    verdict.at_level = m;
  }
  verdict.pass = verdict.worst_excess < tol;
  return verdict;
}

TrendVerdict kolmogorov_condition(const Distribution& dist,
                                  std::span<const double> t_schedule,
                                  double tol) {
  if (t_schedule.empty()) throw ValidationError("t_schedule", "must be nonempty");
  double prev = 0.0;
  for (double t : t_schedule) {
    if (!(t > prev)) throw ValidationError("t_schedule", "must be positive and strictly increasing");
    prev = t;
  }
  TrendVerdict verdict;
  for (double t : t_schedule) {
    verdict.values.push_back(t * (dist.cdf(-t) + 1.0 - dist.cdf(t)));
  }
  bool decreasing = true;
  const std::size_t sz = verdict.values.size();
  for (std::size_t i = sz > 3 ? sz - 3 : 1; i < sz; ++i) {
    if (verdict.values[i] > verdict.values[i - 1] + 1e-12) decreasing = false;
  }
  verdict.pass = verdict.values.back() < tol && decreasing;
  return verdict;
}

double kappa(const SequenceModel& model, int n, std::size_t i, std::size_t k,
             const QuadratureOptions& opts) {
  if (i == k) throw ValidationError("pair", "indices must differ");
  if (model.dependence() == Dependence::kProduct) {
    // Nonlinear pairwise independence factorizes the centered cross-moment
    // into a product of zeros.
    return 0.0;
  }
  const double mu_i = truncated_mean_upper(model.coord(i), n, opts);
  const double mu_k = truncated_mean_upper(model.coord(k), n, opts);
  const std::vector<JointLaw>& laws = model.pair_members(i, k);
  // pair_members normalizes to i < k ordering of the stored atoms.
  const bool swapped = i > k;
  double best = 0.0;
  bool first = true;
  for (const JointLaw& law : laws) {
    double acc = 0.0;
    for (const JointAtom& ja : law.atoms) {
      const double vi = swapped ? ja.xk : ja.xi;
      const double vk = swapped ? ja.xi : ja.xk;
      acc += ja.p * (truncate_value(n, vk) - mu_k) * (truncate_value(n, vi) - mu_i);
    }
    if (first || acc > best) {
      best = acc;
      first = false;
    }
  }
  return best;
}

CesaroResult cesaro_condition(const SequenceModel& model, int n, double tol,
                              const QuadratureOptions& opts) {
  CesaroResult result;
  if (model.dependence() == Dependence::kProduct) {
    result.value = 0.0;
    result.pass = true;
    return result;
  }
  double sum = 0.0;
  if (model.iid_rule() && !model.has_pair_overrides() && n >= 2) {
    // One shared pair law: every ordered pair contributes the same kappa.
    sum = (static_cast<double>(n) * n - n) * kappa(model, n, 1, 2, opts);
  } else {
    for (std::size_t i = 1; i <= static_cast<std::size_t>(n); ++i) {
      for (std::size_t k = 1; k <= static_cast<std::size_t>(n); ++k) {
        if (i == k) continue;
        sum += kappa(model, n, i, k, opts);
      }
    }
  }
  const double clamped = sum > 0.0 ? sum : 0.0;
  result.value = clamped / (static_cast<double>(n) * n);
  result.pass = result.value <= tol;
  return result;
}

}  // namespace nlexp
