#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "nlexp/expectation.hpp"

namespace nlexp {

enum class Dependence { kProduct, kJointPairs };

// One atom of a bivariate discrete law: P(X_i = xi, X_k = xk) = p.
struct JointAtom {
  double xi = 0.0;
  double xk = 0.0;
  double p = 0.0;
};

// One sigma-additive joint member for an unordered coordinate pair.
struct JointLaw {
  std::vector<JointAtom> atoms;
};

// The sequence (X_1, X_2, ...): either one ambiguity set repeated for every
// coordinate (the i.i.d.-style rule) or an explicit finite list. Product
// dependence means the coordinates are treated as nonlinearly independent;
// JointPairs attaches explicit bivariate discrete laws to coordinate pairs,
// whose marginals must match members of the per-coordinate sets.
class SequenceModel {
 public:
  static SequenceModel iid(AmbiguitySet rule);
  static SequenceModel explicit_coords(std::vector<AmbiguitySet> coords);

  // Switches dependence to JointPairs. `shared` applies to every unordered
  // pair unless an override is present in `overrides` (keys use 1-based
  // coordinate indices with i < k). Marginal consistency is validated.
  void set_joint_pairs(std::vector<JointLaw> shared,
                       std::map<std::pair<std::size_t, std::size_t>,
                                std::vector<JointLaw>> overrides = {});

  bool iid_rule() const { return iid_; }
  Dependence dependence() const { return dependence_; }

  // Ambiguity set of coordinate k (1-based). The i.i.d. rule serves any k.
  const AmbiguitySet& coord(std::size_t k) const;
  // Largest k the model can serve; SIZE_MAX under the i.i.d. rule.
  std::size_t max_coords() const;

  // Joint members for the unordered pair {i,k}; throws MissingJointError
  // if no law is modeled for that pair.
  const std::vector<JointLaw>& pair_members(std::size_t i, std::size_t k) const;

  // True when some pair carries a law different from the shared rule.
  bool has_pair_overrides() const { return !pair_overrides_.empty(); }

 private:
  SequenceModel() = default;

  bool iid_ = false;
  Dependence dependence_ = Dependence::kProduct;
  std::vector<AmbiguitySet> coords_;
  std::vector<JointLaw> shared_pair_laws_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<JointLaw>>
      pair_overrides_;
};

}  // namespace nlexp
