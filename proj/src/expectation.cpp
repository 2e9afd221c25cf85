#include "nlexp/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlexp/errors.hpp"

namespace nlexp {

AmbiguitySet::AmbiguitySet(std::vector<Distribution> members,
                           std::size_t max_members)
    : members_(std::move(members)) {
  if (members_.empty())
    throw ValidationError("members", "ambiguity set must be nonempty");
  if (members_.size() > max_members)
    throw ValidationError("members",
                          "member count exceeds limit of " +
                              std::to_string(max_members));
}

namespace {

// Integrability gate: a function of declared growth order m grows at most
// like |x|^(m+1), so it needs a tail power above m+1 unless it is bounded.
void require_integrable(const Distribution& dist, const TestFunction& phi) {
  if (phi.bounded()) return;
  const double power = dist.tail_power();
  if (phi.growth_order() + 1 >= power) {
    throw NonIntegrableError("growth order " +
                             std::to_string(phi.growth_order()) +
                             " exceeds tail decay of " + to_string(dist.kind()));
  }
}

}  // namespace

namespace {

// Integrates f over [a, b] piecewise between the given interior split
// points, sharing the tolerance evenly. Splits make kinks and compact
// supports visible to the panel error estimates: without them a feature
// narrower than the gap between the outermost Gauss node and the endpoint
// would be integrated as zero.
double integrate_split(const std::function<double(double)>& f, double a,
                       double b, std::vector<double> cuts,
                       const QuadratureOptions& opts) {
  cuts.push_back(a);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> edges;
  for (double c : cuts) {
    if (c >= a && c <= b) edges.push_back(c);
  }
  QuadratureOptions piece = opts;
  piece.abs_tol = opts.abs_tol / static_cast<double>(edges.size() - 1);
  double total = 0.0;
  for (std::size_t i = 1; i < edges.size(); ++i) {
    total += integrate(f, edges[i - 1], edges[i], piece);
  }
  return total;
}

constexpr double kTailPow = 8.0;

double tail_coordinate(double q) { return std::pow(2.0 * q, 1.0 / kTailPow); }

}  // namespace

double expect_under(const Distribution& dist, const TestFunction& phi,
                    const QuadratureOptions& opts) {
  require_integrable(dist, phi);
  if (dist.discrete_law()) {
    double acc = 0.0;
    for (const Atom& at : dist.atoms()) acc += at.p * phi(at.x);
    return acc;
  }
  if (dist.kind() == DistKind::kUniform) {
    const auto [lo, hi] = dist.support();
    std::vector<double> cuts;
    for (double b : phi.breakpoints()) {
      if (b > lo && b < hi) cuts.push_back(b);
    }
    return integrate_split([&](double x) { return phi(x); }, lo, hi,
                           std::move(cuts), opts) /
           (hi - lo);
  }
  // Quantile-domain integration, one integral per tail with mass parameter
  // q = t^8 / 2. The Jacobian 4 t^7 flattens the integrable endpoint
  // singularity a heavy tail produces, and the tail-parametrized quantiles
  // resolve mass far below one ulp of 1, so no tail sliver is lost. The
  // floor on q only guards pow underflow. Breakpoints of phi map to forced
  // panel splits in the t coordinate of each tail.
  constexpr double kQFloor = 1e-300;
  QuadratureOptions half = opts;
  half.abs_tol = 0.5 * opts.abs_tol;
  const auto tail_integrand = [&](double t, bool upper) {
    const double jac = std::pow(t, kTailPow - 1.0);
    const double q = std::max(0.5 * jac * t, kQFloor);
    const double x = upper ? dist.quantile_upper_tail(q)
                           : dist.quantile_lower_tail(q);
    return 0.5 * kTailPow * jac * phi(x);
  };
  std::vector<double> lower_cuts, upper_cuts;
  for (double b : phi.breakpoints()) {
    const double cdf_b = dist.cdf(b);
    if (cdf_b > 0.0 && cdf_b <= 0.5) {
      lower_cuts.push_back(tail_coordinate(cdf_b));
    }
    const double tail_b = 1.0 - cdf_b;
    if (tail_b > 0.0 && tail_b <= 0.5) {
      upper_cuts.push_back(tail_coordinate(tail_b));
    }
  }
  return integrate_split([&](double t) { return tail_integrand(t, false); },
                         0.0, 1.0, std::move(lower_cuts), half) +
         integrate_split([&](double t) { return tail_integrand(t, true); },
                         0.0, 1.0, std::move(upper_cuts), half);
}

ExpectResult upper_expect(const AmbiguitySet& amb, const TestFunction& phi,
                          const QuadratureOptions& opts) {
  ExpectResult best;
  bool first = true;
  for (std::size_t j = 0; j < amb.size(); ++j) {
    double v;
    try {
      v = expect_under(amb.member(j), phi, opts);
    } catch (const Error& e) {
      throw NonIntegrableError("member " + std::to_string(j) + ": " + e.what());
    }
    if (first || v > best.value) {
      best.value = v;
      best.arg_member = j;
      first = false;
    }
  }
  return best;
}

ExpectResult lower_expect(const AmbiguitySet& amb, const TestFunction& phi,
                          const QuadratureOptions& opts) {
  ExpectResult r = upper_expect(amb, phi.negate(), opts);
  r.value = -r.value;
  return r;
}

double capacity_V(const AmbiguitySet& amb, const IntervalSet& event) {
  double best = 0.0;
  for (std::size_t j = 0; j < amb.size(); ++j) {
    best = std::max(best, amb.member(j).prob(event));
  }
  return best;
}

double capacity_v(const AmbiguitySet& amb, const IntervalSet& event) {
  return 1.0 - capacity_V(amb, event.complement());
}

namespace {

// Envelope of member supports, clipped to a workable finite window, used as
// the sampling domain for monotonicity and dominance probes.
std::pair<double, double> working_domain(const AmbiguitySet& amb) {
  double lo = kInf, hi = -kInf;
  for (const Distribution& d : amb.members()) {
    const auto [slo, shi] = d.support();
    lo = std::min(lo, std::isfinite(slo) ? slo : d.quantile(1e-4));
    hi = std::max(hi, std::isfinite(shi) ? shi : d.quantile(1.0 - 1e-4));
  }
  if (!(lo < hi)) {
    lo -= 1.0;
    hi += 1.0;
  }
  return {lo, hi};
}

// Uniform probes plus declared breakpoints and their midpoints, so locally
// supported features cannot slip between grid points.
std::vector<double> probe_grid(double lo, double hi,
                               std::initializer_list<const TestFunction*> fns) {
  std::vector<double> probes;
  constexpr int kUniform = 129;
  for (int i = 0; i < kUniform; ++i) {
    probes.push_back(lo + (hi - lo) * i / (kUniform - 1));
  }
  std::vector<double> breaks;
  for (const TestFunction* f : fns) {
    for (double b : f->breakpoints()) {
      if (b >= lo && b <= hi) breaks.push_back(b);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    probes.push_back(breaks[i]);
    if (i + 1 < breaks.size()) {
      probes.push_back(0.5 * (breaks[i] + breaks[i + 1]));
    }
  }
  std::sort(probes.begin(), probes.end());
  return probes;
}

}  // namespace

BoundReport check_markov(const AmbiguitySet& amb, const TestFunction& f,
                         double x, const QuadratureOptions& opts) {
  const auto [dlo, dhi] = working_domain(amb);
  const double lo = std::min(dlo, x - 1.0);
  const double hi = std::max(dhi, x + 1.0);
  double prev = -kInf;
  for (double t : probe_grid(lo, hi, {&f})) {
    const double v = f(t);
    if (!(v > 0.0))
      throw MonotonicityError("f must be positive on the working domain");
    if (v < prev - 1e-12)
      throw MonotonicityError("f decreased on the working domain");
    prev = std::max(prev, v);
  }
  BoundReport report;
  report.lhs = capacity_V(amb, IntervalSet::at_least(x));
  report.rhs = upper_expect(amb, f, opts).value / f(x);
  report.holds = report.lhs <= report.rhs + kInequalitySlack;
  return report;
}

BoundReport check_chebyshev(const AmbiguitySet& amb, double c,
                            const QuadratureOptions& opts) {
  if (!(c > 0.0)) throw ValidationError("c", "must be positive");
  const double ex = upper_expect(amb, TestFunction::identity(), opts).value;
  TestFunction centered_sq(
      [ex](double x) { return (x - ex) * (x - ex); }, 1, 2.0 + 2.0 * std::abs(ex),
      false, "(x-EX)^2");
  BoundReport report;
  const IntervalSet inside =
      IntervalSet::interval(ex - c, ex + c, false, false);
  report.lhs = capacity_V(amb, inside.complement());
  report.rhs = upper_expect(amb, centered_sq, opts).value / (c * c);
  report.holds = report.lhs <= report.rhs + kInequalitySlack;
  return report;
}

SublinearityReport check_sublinearity(const AmbiguitySet& amb,
                                      const TestFunction& phi1,
                                      const TestFunction& phi2, double lambda,
                                      double c, const QuadratureOptions& opts) {
  if (lambda < 0.0) throw ValidationError("lambda", "must be nonnegative");
  constexpr double kTol = 1e-8;
  SublinearityReport report;

  // The axiom tolerance compares two independently integrated values, so
  // integrate well below it.
  QuadratureOptions tight = opts;
  tight.abs_tol = std::min(opts.abs_tol, 1e-10);

  const double e1 = upper_expect(amb, phi1, tight).value;
  const double e2 = upper_expect(amb, phi2, tight).value;

  const auto [lo, hi] = working_domain(amb);
  bool dominates = true;
  for (double t : probe_grid(lo, hi, {&phi1, &phi2})) {
    if (phi1(t) < phi2(t) - 1e-12) {
      dominates = false;
      break;
    }
  }
  report.monotonicity_applies = dominates;
  report.monotone_ok = !dominates || (e1 >= e2 - kTol);

  report.constants_ok =
      std::abs(upper_expect(amb, TestFunction::constant(c), tight).value - c) <=
      kTol;

  const double e_scaled = upper_expect(amb, phi1.scale(lambda), tight).value;
  report.homogeneity_ok = std::abs(e_scaled - lambda * e1) <= kTol;

  const double e_sum = upper_expect(amb, phi1.plus(phi2), tight).value;
  report.subadditive_ok = e_sum <= e1 + e2 + kTol;
  return report;
}

}  // namespace nlexp
