#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "nlexp/distribution.hpp"
#include "nlexp/errors.hpp"
#include "oracles.hpp"

using namespace nlexp;

namespace {
constexpr double kE = std::numbers::e;
}

TEST_CASE("construction validates parameters") {
  CHECK_THROWS_AS(Distribution::normal(0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(Distribution::normal(0.0, -1.0), ValidationError);
  CHECK_THROWS_AS(Distribution::uniform(1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(Distribution::pareto(0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(Distribution::pareto(1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(Distribution::cauchy(0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(Distribution::two_point(1.0, -1.0, 0.5), ValidationError);
  CHECK_THROWS_AS(Distribution::discrete_atoms({{0.0, 0.5}, {1.0, 0.6}}),
                  ValidationError);
  CHECK_THROWS_AS(Distribution::discrete_atoms({{0.0, -0.1}, {1.0, 1.1}}),
                  ValidationError);
  // Within the 1e-12 budget.
  CHECK_NOTHROW(Distribution::discrete_atoms({{0.0, 0.5}, {1.0, 0.5 + 5e-13}}));
}

TEST_CASE("discrete atoms are normalized sorted and merged") {
  const Distribution d =
      Distribution::discrete_atoms({{2.0, 0.25}, {-1.0, 0.5}, {2.0, 0.25}});
  REQUIRE(d.atoms().size() == 2);
  CHECK(d.atoms()[0].x == -1.0);
  CHECK(d.atoms()[1].x == 2.0);
  CHECK(d.atoms()[1].p == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.mass(2.0) == doctest::Approx(0.5));
  CHECK(d.mass(0.5) == 0.0);
}

TEST_CASE("cdf limits and monotonicity across families") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unif(-30.0, 30.0);
  const std::vector<Distribution> laws = {
      Distribution::normal(0.5, 2.0),
      Distribution::uniform(-1.0, 3.0),
      Distribution::two_point(-1.0, 1.0, 0.25),
      Distribution::discrete_atoms({{-2.0, 0.3}, {0.0, 0.4}, {5.0, 0.3}}),
      Distribution::pareto(1.5, 2.0),
      Distribution::cauchy(0.0, 1.0),
      Distribution::symmetric_log_tail(),
  };
  for (const Distribution& d : laws) {
    CHECK(d.cdf(-1e308) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.cdf(1e308) == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 200; ++i) {
      double a = unif(gen), b = unif(gen);
      if (a > b) std::swap(a, b);
      CHECK(d.cdf(a) <= d.cdf(b) + 1e-15);
    }
  }
}

TEST_CASE("quantile inverts the cdf at points of increase") {
  const std::vector<Distribution> laws = {
      Distribution::normal(-1.0, 0.7), Distribution::uniform(2.0, 5.0),
      Distribution::pareto(2.5, 1.0), Distribution::cauchy(1.0, 2.0)};
  for (const Distribution& d : laws) {
    for (double u : {0.001, 0.02, 0.3, 0.5, 0.77, 0.98, 0.9995}) {
      const double x = d.quantile(u);
      CHECK(d.cdf(x) == doctest::Approx(u).epsilon(1e-9));
      CHECK(d.quantile(d.cdf(x)) == doctest::Approx(x).epsilon(1e-8));
    }
  }
}

TEST_CASE("standard normal quantile is accurate") {
  // Probe through the lower tail, where the cdf keeps relative precision;
  // the upper tail is served by symmetry via quantile_upper_tail.
  for (double x : {-8.0, -5.0, -2.0, -0.5, 0.0, 0.1, 1.0, 3.0}) {
    const double u = oracle::normal_cdf(x);
    if (u <= 0.0 || u >= 1.0) continue;
    CHECK(standard_normal_quantile(u) == doctest::Approx(x).epsilon(1e-10));
  }
  const Distribution n01 = Distribution::normal(0.0, 1.0);
  for (double q : {1e-12, 1e-6, 1e-3, 0.2, 0.5}) {
    CHECK(n01.quantile_upper_tail(q) ==
          doctest::Approx(-n01.quantile_lower_tail(q)).epsilon(1e-12));
  }
}

TEST_CASE("symmetric log tail matches its defining tail formula") {
  const Distribution d = Distribution::symmetric_log_tail();
  CHECK(d.abs_tail(1.0) == 1.0);
  CHECK(d.abs_tail(kE) == doctest::Approx(1.0));
  CHECK(d.abs_tail(kE * kE) == doctest::Approx(1.0 / (2.0 * kE)).epsilon(1e-12));
  for (double t : {3.0, 10.0, 1e3, 1e8}) {
    CHECK(d.abs_tail(t) == doctest::Approx(kE / (t * std::log(t))).epsilon(1e-12));
  }
  // Tail is nonincreasing.
  double prev = 1.0;
  for (double t = 0.5; t < 1e6; t *= 1.7) {
    const double g = d.abs_tail(t);
    CHECK(g <= prev + 1e-15);
    prev = g;
  }
  // No mass inside (-e, e); the cdf is flat at 1/2 there.
  CHECK(d.cdf(0.0) == 0.5);
  CHECK(d.cdf(-2.0) == 0.5);
  CHECK(d.cdf(2.5) == 0.5);
  // Quantile inverts on both branches.
  for (double u : {0.01, 0.2, 0.49, 0.51, 0.8, 0.999}) {
    const double x = d.quantile(u);
    CHECK(std::abs(x) >= kE * (1.0 - 1e-9));
    CHECK(d.cdf(x) == doctest::Approx(u).epsilon(1e-9));
  }
}

TEST_CASE("interval probabilities honor endpoint openness at atoms") {
  const Distribution d = Distribution::two_point(-1.0, 1.0, 0.6);
  CHECK(d.prob(IntervalSet::point(1.0)) == 0.6);
  CHECK(d.prob(IntervalSet::point(-1.0)) == doctest::Approx(0.4));
  CHECK(d.prob(IntervalSet::interval(-1.0, 1.0, true, true)) == doctest::Approx(1.0));
  CHECK(d.prob(IntervalSet::interval(-1.0, 1.0, false, false)) == 0.0);
  CHECK(d.prob(IntervalSet::interval(-1.0, 1.0, false, true)) == 0.6);
  CHECK(d.prob(IntervalSet::greater_than(1.0)) == 0.0);
  CHECK(d.prob(IntervalSet::at_least(1.0)) == 0.6);
  CHECK(d.prob(IntervalSet::real_line()) == doctest::Approx(1.0));
  CHECK(d.prob(IntervalSet::empty_set()) == 0.0);
}

TEST_CASE("continuous interval probabilities agree with cdf differences") {
  const Distribution d = Distribution::normal(0.0, 1.0);
  CHECK(d.prob(IntervalSet::greater_than(0.0)) == doctest::Approx(0.5));
  CHECK(d.prob(IntervalSet::abs_greater_than(2.0)) ==
        doctest::Approx(2.0 * oracle::normal_cdf(-2.0)).epsilon(1e-12));
  const Distribution u = Distribution::uniform(0.0, 1.0);
  CHECK(u.prob(IntervalSet::interval(0.0, 0.25, false, false)) ==
        doctest::Approx(0.25));
}

TEST_CASE("tail powers gate integrability decisions") {
  CHECK(Distribution::normal(0, 1).tail_power() == kInf);
  CHECK(Distribution::pareto(1.5, 1.0).tail_power() == 1.5);
  CHECK(Distribution::cauchy(0, 1).tail_power() == 1.0);
  CHECK(Distribution::symmetric_log_tail().tail_power() == 1.0);
}
