#pragma once

#include <cstddef>
#include <vector>

#include "nlexp/distribution.hpp"
#include "nlexp/interval_set.hpp"
#include "nlexp/quadrature.hpp"
#include "nlexp/test_function.hpp"

namespace nlexp {

// A finite family of sigma-additive laws; the index set Theta of one
// coordinate. Upper/lower expectations are the exact max/min over members.
class AmbiguitySet {
 public:
  explicit AmbiguitySet(std::vector<Distribution> members,
                        std::size_t max_members = kDefaultMaxMembers);

  static constexpr std::size_t kDefaultMaxMembers = 64;

  const std::vector<Distribution>& members() const { return members_; }
  const Distribution& member(std::size_t j) const { return members_[j]; }
  std::size_t size() const { return members_.size(); }
  bool singleton() const { return members_.size() == 1; }

 private:
  std::vector<Distribution> members_;
};

// Classical expectation of phi under one law. Atomic families are summed
// exactly; bounded supports integrate in x; unbounded supports integrate in
// the quantile domain u in (0,1), x = quantile(u).
double expect_under(const Distribution& dist, const TestFunction& phi,
                    const QuadratureOptions& opts = {});

struct ExpectResult {
  double value = 0.0;
  std::size_t arg_member = 0;  // index of the member attaining the value
};

ExpectResult upper_expect(const AmbiguitySet& amb, const TestFunction& phi,
                          const QuadratureOptions& opts = {});
// lower_expect(phi) == -upper_expect(-phi) by construction.
ExpectResult lower_expect(const AmbiguitySet& amb, const TestFunction& phi,
                          const QuadratureOptions& opts = {});

// Upper capacity V(B) = max_j P_j(X in B) and its conjugate
// v(B) = 1 - V(complement of B) = min_j P_j(X in B).
double capacity_V(const AmbiguitySet& amb, const IntervalSet& event);
double capacity_v(const AmbiguitySet& amb, const IntervalSet& event);

struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

inline constexpr double kInequalitySlack = 1e-9;

// V(X >= x) <= E f(X) / f(x) for positive nondecreasing f. Monotonicity and
// positivity of f are asserted by sampling; violations throw
// MonotonicityError.
BoundReport check_markov(const AmbiguitySet& amb, const TestFunction& f,
                         double x, const QuadratureOptions& opts = {});

// V(|X - EX| >= c) <= E|X - EX|^2 / c^2 with EX the upper expectation.
BoundReport check_chebyshev(const AmbiguitySet& amb, double c,
                            const QuadratureOptions& opts = {});

struct SublinearityReport {
  bool monotonicity_applies = false;  // phi1 >= phi2 held on the sample grid
  bool monotone_ok = true;
  bool constants_ok = false;
  bool homogeneity_ok = false;
  bool subadditive_ok = false;
  bool all_ok() const {
    return monotone_ok && constants_ok && homogeneity_ok && subadditive_ok;
  }
};

// Checks the four defining sublinear-expectation axioms on concrete inputs
// within 1e-8: monotonicity (when phi1 dominates phi2 on a sample grid),
// preservation of constants, positive homogeneity with lambda >= 0, and
// subadditivity.
SublinearityReport check_sublinearity(const AmbiguitySet& amb,
                                      const TestFunction& phi1,
                                      const TestFunction& phi2, double lambda,
                                      double c,
                                      const QuadratureOptions& opts = {});

}  // namespace nlexp
