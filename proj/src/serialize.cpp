#include "nlexp/serialize.hpp"

#include <string>

#include "nlexp/errors.hpp"

namespace nlexp {

namespace {

using nlohmann::json;

double need_number(const json& j, const std::string& key,
                   const std::string& where) {
  if (!j.contains(key) || !j[key].is_number())
    throw ValidationError(where + "." + key, "missing numeric field");
  return j[key].get<double>();
}

}  // namespace

nlohmann::json to_json(const Distribution& dist) {
  json j;
  j["kind"] = to_string(dist.kind());
  switch (dist.kind()) {
    case DistKind::kNormal:
      j["mean"] = dist.mean();
      j["stddev"] = dist.stddev();
      break;
    case DistKind::kUniform:
      j["low"] = dist.lo();
      j["high"] = dist.hi();
      break;
    case DistKind::kTwoPoint:
      j["low"] = dist.lo();
      j["high"] = dist.hi();
      j["p_high"] = dist.p_hi();
      break;
    case DistKind::kDiscreteAtoms: {
      json atoms = json::array();
      for (const Atom& at : dist.atoms()) atoms.push_back({at.x, at.p});
      j["atoms"] = std::move(atoms);
      break;
    }
    case DistKind::kPareto:
      j["shape"] = dist.shape();
      j["scale"] = dist.scale();
      break;
    case DistKind::kCauchy:
      j["location"] = dist.location();
      j["scale"] = dist.scale();
      break;
    case DistKind::kSymmetricLogTail:
      break;
  }
  return j;
}

Distribution distribution_from_json(const nlohmann::json& j,
                                    const std::string& where) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ValidationError(where, "expected an object with a 'kind' tag");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "normal")
      return Distribution::normal(need_number(j, "mean", where),
                                  need_number(j, "stddev", where));
    if (kind == "uniform")
      return Distribution::uniform(need_number(j, "low", where),
                                   need_number(j, "high", where));
    if (kind == "two_point")
      return Distribution::two_point(need_number(j, "low", where),
                                     need_number(j, "high", where),
                                     need_number(j, "p_high", where));
    if (kind == "discrete_atoms") {
      if (!j.contains("atoms") || !j["atoms"].is_array())
        throw ValidationError(where + ".atoms", "missing atom list");
      std::vector<Atom> atoms;
      for (const json& a : j["atoms"]) {
        if (!a.is_array() || a.size() != 2)
          throw ValidationError(where + ".atoms", "atoms are [x, p] pairs");
        atoms.push_back({a[0].get<double>(), a[1].get<double>()});
      }
      return Distribution::discrete_atoms(std::move(atoms));
    }
    if (kind == "pareto")
      return Distribution::pareto(need_number(j, "shape", where),
                                  need_number(j, "scale", where));
    if (kind == "cauchy")
      return Distribution::cauchy(need_number(j, "location", where),
                                  need_number(j, "scale", where));
    if (kind == "symmetric_log_tail") return Distribution::symmetric_log_tail();
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.field, e.reason);
  }
  throw ValidationError(where + ".kind", "unknown distribution kind '" + kind + "'");
}

nlohmann::json to_json(const AmbiguitySet& amb) {
  json members = json::array();
  for (const Distribution& d : amb.members()) members.push_back(to_json(d));
  return json{{"members", std::move(members)}};
}

AmbiguitySet ambiguity_from_json(const nlohmann::json& j,
                                 const std::string& where) {
  if (!j.is_object() || !j.contains("members") || !j["members"].is_array())
    throw ValidationError(where, "expected an object with a 'members' array");
  std::vector<Distribution> members;
  std::size_t idx = 0;
  for (const json& m : j["members"]) {
    members.push_back(
        distribution_from_json(m, where + ".members[" + std::to_string(idx) + "]"));
    ++idx;
  }
  try {
    return AmbiguitySet(std::move(members));
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.field, e.reason);
  }
}

namespace {

std::vector<JointLaw> joint_laws_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where, "expected an array of joint laws");
  std::vector<JointLaw> laws;
  std::size_t li = 0;
  for (const json& law : j) {
    if (!law.is_object() || !law.contains("atoms") || !law["atoms"].is_array())
      throw ValidationError(where + "[" + std::to_string(li) + "]",
                            "joint law needs an 'atoms' array");
    JointLaw out;
    for (const json& a : law["atoms"]) {
      if (!a.is_array() || a.size() != 3)
        throw ValidationError(where + "[" + std::to_string(li) + "].atoms",
                              "joint atoms are [x_i, x_k, p] triples");
      out.atoms.push_back(
          {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()});
    }
    laws.push_back(std::move(out));
    ++li;
  }
  return laws;
}

json joint_laws_to_json(const std::vector<JointLaw>& laws) {
  json arr = json::array();
  for (const JointLaw& law : laws) {
    json atoms = json::array();
    for (const JointAtom& a : law.atoms) atoms.push_back({a.xi, a.xk, a.p});
    arr.push_back(json{{"atoms", std::move(atoms)}});
  }
  return arr;
}

}  // namespace

nlohmann::json to_json(const SequenceModel& model) {
  json j;
  if (model.iid_rule()) {
    j["iid"] = to_json(model.coord(1));
  } else {
    json coords = json::array();
    for (std::size_t k = 1; k <= model.max_coords(); ++k) {
      coords.push_back(to_json(model.coord(k)));
    }
    j["coordinates"] = std::move(coords);
  }
  if (model.dependence() == Dependence::kProduct) {
    j["dependence"] = "product";
  } else {
    // Only the shared rule round-trips; per-pair overrides are an input
    // convenience and models built from overrides serialize them back
    // explicitly through the config layer.
    j["dependence"] = json{{"joint_pairs", joint_laws_to_json(
                                               model.pair_members(1, 2))}};
  }
  return j;
}

SequenceModel model_from_json(const nlohmann::json& j,
                              const std::string& where) {
  if (!j.is_object()) throw ValidationError(where, "expected an object");
  SequenceModel model = [&]() {
    if (j.contains("iid")) {
      return SequenceModel::iid(ambiguity_from_json(j["iid"], where + ".iid"));
    }
    if (j.contains("coordinates")) {
      if (!j["coordinates"].is_array() || j["coordinates"].empty())
        throw ValidationError(where + ".coordinates", "must be a nonempty array");
      std::vector<AmbiguitySet> coords;
      std::size_t idx = 0;
      for (const json& c : j["coordinates"]) {
        coords.push_back(ambiguity_from_json(
            c, where + ".coordinates[" + std::to_string(idx) + "]"));
        ++idx;
      }
      return SequenceModel::explicit_coords(std::move(coords));
    }
    throw ValidationError(where, "needs either 'iid' or 'coordinates'");
  }();

  if (j.contains("dependence")) {
    const json& dep = j["dependence"];
    if (dep.is_string()) {
      if (dep.get<std::string>() != "product")
        throw ValidationError(where + ".dependence",
                              "unknown dependence '" + dep.get<std::string>() + "'");
    } else if (dep.is_object() && dep.contains("joint_pairs")) {
      model.set_joint_pairs(
          joint_laws_from_json(dep["joint_pairs"], where + ".dependence.joint_pairs"));
    } else {
      throw ValidationError(where + ".dependence",
                            "expected 'product' or {joint_pairs: [...]}");
    }
  }
  return model;
}

}  // namespace nlexp
