#include "nlexp/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "nlexp/quadrature.hpp"

namespace nlexp {

namespace {

std::uint64_t path_seed(const EstimateBudget& budget) {
  return rng::derive_seed(budget.seed, rng::Purpose::kPathDraws);
}

ProbEstimate finish_estimate(std::uint64_t hits, std::uint64_t reps) {
  ProbEstimate est;
  est.hits = hits;
  est.reps = reps;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(reps);
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) /
                          static_cast<double>(reps));
  return est;
}

TruncatedMeans ensure_means(const SequenceModel& model, int n,
                            const TruncatedMeans* means) {
  if (means != nullptr && means->level == n) return *means;
  return mu_bounds(model, n);
}

}  // namespace

std::vector<double> sample_path(const SequenceModel& model,
                                const ScenarioSelection& selection, int n,
                                std::uint64_t seed, std::uint64_t rep) {
  mc::CoordView view(model, n);
  if (selection.member.size() != static_cast<std::size_t>(n))
    throw ValidationError("selection", "length must equal n");
  const std::uint64_t s = rng::derive_seed(seed, rng::Purpose::kPathDraws);
  std::vector<double> path(n);
  for (int k = 1; k <= n; ++k) {
    path[k - 1] = view.draw(k, selection.member[k - 1], s, rep);
  }
  return path;
}

ProbEstimate event_probability_under(const SequenceModel& model,
                                     const ScenarioSelection& selection,
                                     const PathEvent& event, int n,
                                     const EstimateBudget& budget,
                                     const TruncatedMeans* means) {
  if (budget.mc_reps < 100)
    throw ValidationError("mc_reps", "must be >= 100 for reported estimates");
  mc::CoordView view(model, n);
  if (selection.member.size() != static_cast<std::size_t>(n))
    throw ValidationError("selection", "length must equal n");
  const TruncatedMeans tm = ensure_means(model, n, means);
  const EventWindow window = make_window(event, tm.mu_bar, tm.mu_under);
  std::vector<double> sums(budget.mc_reps);
  mc::path_sums_parallel(view, selection.member, path_seed(budget), sums);
  return finish_estimate(mc::count_hits(sums, n, window), budget.mc_reps);
}

namespace {

struct SearchOutcome {
  std::uint64_t hits = 0;
  ScenarioSelection selection;
  std::size_t starts = 0;
  bool passes_exhausted = false;
};

// Greedy coordinate ascent from one start; mutates selection/sums in place
// and returns the final hit count. Sets `exhausted` when the last allowed
// pass still found improvements.
std::uint64_t ascend(const mc::CoordView& view, const EventWindow& window,
                     std::uint64_t seed, std::size_t max_passes,
                     std::vector<std::uint32_t>& selection,
                     std::vector<double>& sums, bool& exhausted) {
  const int n = view.n();
  std::uint64_t current = mc::count_hits(sums, n, window);
  std::vector<std::uint64_t> counts;
  bool improved = false;
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    improved = false;
    for (std::size_t k = 1; k <= static_cast<std::size_t>(n); ++k) {
      const std::uint32_t m_count = view.member_count(k);
      if (m_count <= 1) continue;
      counts.assign(m_count, 0);
      mc::swap_scan_parallel(view, selection, k, seed, sums, window, counts);
      const std::uint32_t cur = selection[k - 1];
      std::uint32_t best = cur;
      std::uint64_t best_count = counts[cur];
      for (std::uint32_t m = 0; m < m_count; ++m) {
        if (counts[m] > best_count) {
          best = m;
          best_count = counts[m];
        }
      }
      if (best != cur) {
        mc::apply_swap_parallel(view, k, cur, best, seed, sums);
        selection[k - 1] = best;
        current = best_count;
        improved = true;
      }
    }
    if (!improved) break;
  }
  exhausted = exhausted || improved;
  return current;
}

// Directed starts pick, per coordinate, the member with the extreme
// truncated mean; exhaustive enumeration on small models confirms the
// monotone coupling intuition behind them. Random restarts cover the rest.
std::vector<std::vector<std::uint32_t>> build_starts(
    const SequenceModel& model, const mc::CoordView& view,
    const EventWindow& window, const EstimateBudget& budget) {
  const int n = view.n();
  std::vector<std::vector<std::uint32_t>> starts;

  const bool want_up = window.kind == EventKind::kUpperExceed ||
                       window.kind == EventKind::kOutsideBand ||
                       window.kind == EventKind::kBand;
  const bool want_down = window.kind == EventKind::kLowerExceed ||
                         window.kind == EventKind::kOutsideBand ||
                         window.kind == EventKind::kBand;

  auto directed = [&](bool up) {
    std::vector<std::uint32_t> sel(n, 0);
    if (model.iid_rule()) {
      const AmbiguitySet& amb = model.coord(1);
      const TestFunction fn = truncation_fn(n);
      const std::uint32_t pick = static_cast<std::uint32_t>(
          up ? upper_expect(amb, fn).arg_member
             : lower_expect(amb, fn).arg_member);
      std::fill(sel.begin(), sel.end(), pick);
    } else {
      const TestFunction fn = truncation_fn(n);
      for (int k = 1; k <= n; ++k) {
        const AmbiguitySet& amb = model.coord(k);
        sel[k - 1] = static_cast<std::uint32_t>(
            up ? upper_expect(amb, fn).arg_member
               : lower_expect(amb, fn).arg_member);
      }
    }
    return sel;
  };

  if (want_up) starts.push_back(directed(true));
  if (want_down) starts.push_back(directed(false));

  const std::uint64_t rs = rng::derive_seed(budget.seed, rng::Purpose::kRestarts);
  for (std::size_t r = 0; r < budget.restarts; ++r) {
    std::vector<std::uint32_t> sel(n);
    for (int k = 1; k <= n; ++k) {
      const std::uint32_t m_count = view.member_count(k);
      sel[k - 1] = std::min<std::uint32_t>(
          static_cast<std::uint32_t>(rng::unit(rs, k, r) * m_count),
          m_count - 1);
    }
    starts.push_back(std::move(sel));
  }
  // Deduplicate identical starts, preserving order.
  std::vector<std::vector<std::uint32_t>> unique;
  for (auto& s : starts) {
    if (std::find(unique.begin(), unique.end(), s) == unique.end()) {
      unique.push_back(std::move(s));
    }
  }
  return unique;
}

SearchOutcome search_capacity(const SequenceModel& model,
                              const EventWindow& window, int n,
                              const EstimateBudget& budget) {
  mc::CoordView view(model, n);
  const std::uint64_t seed = path_seed(budget);

  if (view.all_singletons()) {
    SearchOutcome out;
    out.selection.member.assign(n, 0);
    std::vector<double> sums(budget.mc_reps);
    mc::path_sums_parallel(view, out.selection.member, seed, sums);
    out.hits = mc::count_hits(sums, n, window);
    out.starts = 1;
    return out;
  }

  const auto starts = build_starts(model, view, window, budget);
  SearchOutcome best;
  bool first = true;
  std::vector<double> sums(budget.mc_reps);
  for (const auto& start : starts) {
    std::vector<std::uint32_t> sel = start;
    mc::path_sums_parallel(view, sel, seed, sums);
    const std::uint64_t hits = ascend(view, window, seed, budget.max_passes,
                                      sel, sums, best.passes_exhausted);
    if (first || hits > best.hits) {
      best.hits = hits;
      best.selection.member = sel;
      first = false;
    }
  }
  best.starts = starts.size();

  // Fresh evaluation of the winner: incremental swap updates drift by a few
  // ulps, and the reported estimate must be a clean pass.
  std::vector<double> fresh(budget.mc_reps);
  mc::path_sums_parallel(view, best.selection.member, seed, fresh);
  best.hits = mc::count_hits(fresh, n, window);
  return best;
}

}  // namespace

CapacityEstimate estimate_capacity_V(const SequenceModel& model,
                                     const PathEvent& event, int n,
                                     const EstimateBudget& budget,
                                     const TruncatedMeans* means) {
  if (budget.mc_reps < 100)
    throw ValidationError("mc_reps", "must be >= 100 for reported estimates");
  const TruncatedMeans tm = ensure_means(model, n, means);
  const EventWindow window = make_window(event, tm.mu_bar, tm.mu_under);
  const SearchOutcome out = search_capacity(model, window, n, budget);
  CapacityEstimate est;
  const ProbEstimate pe = finish_estimate(out.hits, budget.mc_reps);
  est.v_hat = pe.p_hat;
  est.std_err = pe.std_err;
  est.hits = pe.hits;
  est.best = out.selection;
  est.starts_used = out.starts;
  est.passes_exhausted = out.passes_exhausted;
  return est;
}

LowerCapacityEstimate estimate_capacity_v(const SequenceModel& model,
                                          const PathEvent& band_event, int n,
                                          const EstimateBudget& budget,
                                          const TruncatedMeans* means) {
  if (band_event.kind != EventKind::kBand)
    throw ValidationError("event", "lower capacity is estimated for band events");
  PathEvent outside = band_event;
  outside.kind = EventKind::kOutsideBand;
  LowerCapacityEstimate est;
  est.complement = estimate_capacity_V(model, outside, n, budget, means);
  est.v_hat = 1.0 - est.complement.v_hat;
  est.std_err = est.complement.std_err;
  return est;
}

namespace {

struct BruteContext {
  const SequenceModel* model;
  int n;
  EventWindow window;
  std::vector<std::uint32_t> selection;
  double best = -1.0;
  std::vector<std::uint32_t> best_selection;
};

double exact_event_prob(const BruteContext& ctx, std::size_t k, double sum,
                        double prob) {
  if (prob == 0.0) return 0.0;
  if (k > static_cast<std::size_t>(ctx.n)) {
    return ctx.window.hit(sum / ctx.n) ? prob : 0.0;
  }
  const Distribution& d =
      ctx.model->coord(k).member(ctx.selection[k - 1]);
  double acc = 0.0;
  for (const Atom& at : d.atoms()) {
    acc += exact_event_prob(ctx, k + 1, sum + at.x, prob * at.p);
  }
  return acc;
}

void enumerate_selections(BruteContext& ctx, std::size_t k) {
  if (k > static_cast<std::size_t>(ctx.n)) {
    const double p = exact_event_prob(ctx, 1, 0.0, 1.0);
    if (p > ctx.best) {
      ctx.best = p;
      ctx.best_selection = ctx.selection;
    }
    return;
  }
  const std::size_t m_count = ctx.model->coord(k).size();
  for (std::size_t m = 0; m < m_count; ++m) {
    ctx.selection[k - 1] = static_cast<std::uint32_t>(m);
    enumerate_selections(ctx, k + 1);
  }
}

}  // namespace

double brute_force_capacity(const SequenceModel& model, const PathEvent& event,
                            int n, const TruncatedMeans* means,
                            double max_outcomes,
                            ScenarioSelection* arg_selection) {
  mc::CoordView view(model, n);
  double total = 1.0;
  for (int k = 1; k <= n; ++k) {
    double per_coord = 0.0;
    for (const Distribution& member : model.coord(k).members()) {
      if (!member.discrete_law())
        throw ValidationError("model",
                              "brute force requires discrete-atoms members");
      per_coord += static_cast<double>(member.atoms().size());
    }
    total *= per_coord;
    if (total > max_outcomes)
      throw TooLargeError("enumeration size exceeds the configured cap");
  }
  const TruncatedMeans tm = ensure_means(model, n, means);
  BruteContext ctx;
  ctx.model = &model;
  ctx.n = n;
  ctx.window = make_window(event, tm.mu_bar, tm.mu_under);
  ctx.selection.assign(n, 0);
  enumerate_selections(ctx, 1);
  if (arg_selection != nullptr) arg_selection->member = ctx.best_selection;
  return ctx.best;
}

ConvergenceReport convergence_experiment(const SequenceModel& model,
                                         double epsilon,
                                         std::span<const int> n_schedule,
                                         const EstimateBudget& budget,
                                         const ConditionSpec& conditions) {
  if (n_schedule.empty())
    throw ValidationError("n_schedule", "must be nonempty");
  ConvergenceReport report;
  report.epsilon = epsilon;

  const std::vector<double> grid =
      conditions.y_grid.empty() ? default_y_grid() : conditions.y_grid;
  report.psi = check_psi_vanishes(model, n_schedule, grid, conditions.psi_tol);
  std::vector<PsiProfile> profiles;
  profiles.reserve(n_schedule.size());
  for (int n : n_schedule) profiles.push_back(psi_profile(model, n, grid));
  report.ui = check_uniform_integrability(profiles, conditions.m_schedule,
                                          conditions.ui_tol);

  for (int n : n_schedule) {
    const auto t0 = std::chrono::steady_clock::now();
    ConvergenceRow row;
    row.n = n;
    row.epsilon = epsilon;
    const TruncatedMeans tm = mu_bounds(model, n);

    const CapacityEstimate up =
        estimate_capacity_V(model, upper_exceed(epsilon), n, budget, &tm);
    row.upper = finish_estimate(up.hits, budget.mc_reps);
    row.best_upper = up.best;

    const CapacityEstimate down =
        estimate_capacity_V(model, lower_exceed(epsilon), n, budget, &tm);
    row.lower = finish_estimate(down.hits, budget.mc_reps);
    row.best_lower = down.best;

    const LowerCapacityEstimate band =
        estimate_capacity_v(model, nlexp::band(epsilon), n, budget, &tm);
    row.v_band = band.v_hat;
    row.band_std_err = band.std_err;
    row.best_outside = band.complement.best;
    row.budget_exhausted = up.passes_exhausted || down.passes_exhausted ||
                           band.complement.passes_exhausted;

    row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    report.rows.push_back(std::move(row));
  }
  return report;
}

ProofChainReport proof_chain_check(const SequenceModel& model, int n,
                                   const QuadratureOptions& opts) {
  if (model.dependence() != Dependence::kProduct)
    throw ValidationError("dependence", "proof chain requires product dependence");
  QuadratureOptions tight = opts;
  tight.abs_tol = std::min(opts.abs_tol, 1e-10);

  const std::size_t distinct = model.iid_rule() ? 1 : static_cast<std::size_t>(n);
  struct CoordMoments {
    double ey2, mu_plus, mu_minus, centered_sq, gamma_n;
  };
  std::vector<CoordMoments> coords;
  coords.reserve(distinct);
  for (std::size_t k = 1; k <= distinct; ++k) {
    const AmbiguitySet& amb = model.coord(k);
    CoordMoments cm{};
    cm.ey2 = upper_expect(amb, truncation_sq_fn(n), tight).value;
    cm.mu_plus = truncated_mean_upper(amb, n, tight);
    cm.mu_minus = truncated_mean_lower(amb, n, tight);
    const double mu = cm.mu_plus;
    TestFunction centered(
        [mu, n](double x) {
          const double z = truncate_value(n, x) - mu;
          return z * z;
        },
        0, 2.0 * (n + 1.0 + std::abs(mu)) * (n + 2.0), true, "centered_sq",
        {-(n + 1.0), -static_cast<double>(n), 0.0, static_cast<double>(n),
         n + 1.0});
    cm.centered_sq = upper_expect(amb, centered, tight).value;
    cm.gamma_n = gamma_hat(amb, static_cast<double>(n));
    coords.push_back(cm);
  }
  const auto coord_at = [&](std::size_t k) -> const CoordMoments& {
    return model.iid_rule() ? coords.front() : coords[k - 1];
  };

  const double n2 = static_cast<double>(n) * n;
  double sum_gamma = 0.0, sum_ey2 = 0.0, sum_mu_sq = 0.0, sum_centered = 0.0,
         sum_cross = 0.0;
  for (std::size_t k = 1; k <= static_cast<std::size_t>(n); ++k) {
    const CoordMoments& cm = coord_at(k);
    sum_gamma += cm.gamma_n;
    sum_ey2 += cm.ey2;
    sum_mu_sq += cm.mu_plus * cm.mu_plus;
    sum_centered += cm.centered_sq;
    // E[-2 mu+ Y] = c mu+ for c >= 0, c mu- for c < 0, with c = -2 mu+.
    const double c = -2.0 * cm.mu_plus;
    sum_cross += c >= 0.0 ? c * cm.mu_plus : c * cm.mu_minus;
  }

  const double psi_one = psi(model, n, 1.0);
  QuadratureOptions psi_opts;
  psi_opts.abs_tol = 1e-10;
  const double psi_integral = integrate(
      [&](double y) { return psi(model, n, y); }, 0.0, 1.0, psi_opts);

  ProofChainReport report;
  report.n = n;
  constexpr double kSlack = 1e-7;
  auto add = [&](std::string name, double lhs, double rhs) {
    report.bounds.push_back({std::move(name), lhs, rhs, lhs <= rhs + kSlack});
  };
  add("ssprime", sum_gamma, psi_one);
  add("vsprime", sum_centered / n2,
      (sum_ey2 + sum_cross + sum_mu_sq) / n2);
  add("bound_i", sum_ey2 / n2,
      2.0 * (1.0 + 1.0 / n) * (1.0 + 1.0 / n) * psi_integral);
  add("bound_ii", sum_mu_sq / n2, sum_ey2 / n2);
  add("bound_iii", sum_cross / n2, 2.0 * sum_ey2 / n2);

  report.all_hold = true;
  for (const ProofBound& b : report.bounds) {
    if (!b.holds) {
      report.all_hold = false;
      throw BoundViolatedError("proof chain bound '" + b.name +
                               "' violated at n=" + std::to_string(n) +
                               " (lhs=" + std::to_string(b.lhs) +
                               ", rhs=" + std::to_string(b.rhs) + ")");
    }
  }
  return report;
}

}  // namespace nlexp
