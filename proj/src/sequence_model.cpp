#include "nlexp/sequence_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "nlexp/errors.hpp"

namespace nlexp {

SequenceModel SequenceModel::iid(AmbiguitySet rule) {
  SequenceModel m;
  m.iid_ = true;
  m.coords_.push_back(std::move(rule));
  return m;
}

SequenceModel SequenceModel::explicit_coords(std::vector<AmbiguitySet> coords) {
  if (coords.empty())
    throw ValidationError("coordinates", "must be nonempty");
  SequenceModel m;
  m.iid_ = false;
  m.coords_ = std::move(coords);
  return m;
}

const AmbiguitySet& SequenceModel::coord(std::size_t k) const {
  if (k == 0) throw ValidationError("k", "coordinates are 1-based");
  if (iid_) return coords_.front();
  if (k > coords_.size())
    throw ValidationError("k", "coordinate " + std::to_string(k) +
                                   " beyond modeled length " +
                                   std::to_string(coords_.size()));
  return coords_[k - 1];
}

std::size_t SequenceModel::max_coords() const {
  return iid_ ? static_cast<std::size_t>(-1) : coords_.size();
}

namespace {

std::vector<Atom> marginal(const JointLaw& law, bool first) {
  std::vector<Atom> atoms;
  for (const JointAtom& ja : law.atoms) {
    atoms.push_back({first ? ja.xi : ja.xk, ja.p});
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.x < b.x; });
  std::vector<Atom> merged;
  for (const Atom& a : atoms) {
    if (!merged.empty() && merged.back().x == a.x) {
      merged.back().p += a.p;
    } else {
      merged.push_back(a);
    }
  }
  return merged;
}

bool atoms_match(const std::vector<Atom>& a, const std::vector<Atom>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].x != b[i].x) return false;
    if (std::abs(a[i].p - b[i].p) > 1e-12) return false;
  }
  return true;
}

// Every marginal of every joint member must equal some member of the
// coordinate's ambiguity set, atom for atom.
void validate_pair_laws(const AmbiguitySet& amb_i, const AmbiguitySet& amb_k,
                        const std::vector<JointLaw>& laws,
                        const std::string& where) {
  if (laws.empty())
    throw ValidationError(where, "pair law list must be nonempty");
  for (const JointLaw& law : laws) {
    if (law.atoms.empty())
      throw ValidationError(where, "joint law must have atoms");
    double total = 0.0;
    for (const JointAtom& ja : law.atoms) {
      if (ja.p < 0.0)
        throw ValidationError(where, "joint probabilities must be >= 0");
      total += ja.p;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw ValidationError(where, "joint probabilities must sum to 1");
    for (bool first : {true, false}) {
      const std::vector<Atom> marg = marginal(law, first);
      const AmbiguitySet& amb = first ? amb_i : amb_k;
      bool found = false;
      for (const Distribution& member : amb.members()) {
        if (member.discrete_law() && atoms_match(member.atoms(), marg)) {
          found = true;
          break;
        }
      }
      if (!found)
        throw ValidationError(
            where, std::string("joint ") + (first ? "first" : "second") +
                       " marginal does not appear in the coordinate's members");
    }
  }
}

}  // namespace

void SequenceModel::set_joint_pairs(
    std::vector<JointLaw> shared,
    std::map<std::pair<std::size_t, std::size_t>, std::vector<JointLaw>>
        overrides) {
  if (!shared.empty()) {
    // The shared rule must be marginal-consistent with every coordinate; for
    // explicit lists check each pair, for the i.i.d. rule the single set.
    if (iid_) {
      validate_pair_laws(coords_.front(), coords_.front(), shared, "joint_pairs");
    } else {
      for (std::size_t i = 1; i <= coords_.size(); ++i) {
        for (std::size_t k = i + 1; k <= coords_.size(); ++k) {
          validate_pair_laws(coord(i), coord(k), shared, "joint_pairs");
        }
      }
    }
  }
  for (const auto& [key, laws] : overrides) {
    if (key.first == 0 || key.second <= key.first)
      throw ValidationError("joint_pairs", "pair keys must satisfy 1 <= i < k");
    validate_pair_laws(coord(key.first), coord(key.second), laws,
                       "joint_pairs[" + std::to_string(key.first) + "," +
                           std::to_string(key.second) + "]");
  }
  shared_pair_laws_ = std::move(shared);
  pair_overrides_ = std::move(overrides);
  dependence_ = Dependence::kJointPairs;
}

const std::vector<JointLaw>& SequenceModel::pair_members(std::size_t i,
                                                         std::size_t k) const {
  if (i == k) throw ValidationError("pair", "indices must differ");
  if (i > k) std::swap(i, k);
  const auto it = pair_overrides_.find({i, k});
  if (it != pair_overrides_.end()) return it->second;
  if (!shared_pair_laws_.empty()) return shared_pair_laws_;
  throw MissingJointError("no joint law modeled for pair (" +
                          std::to_string(i) + "," + std::to_string(k) + ")");
}

}  // namespace nlexp
