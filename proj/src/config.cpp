#include "nlexp/config.hpp"

#include <fstream>
#include <sstream>

#include "nlexp/errors.hpp"
#include "nlexp/serialize.hpp"

namespace nlexp {

namespace {

using nlohmann::json;

template <typename T>
std::vector<T> number_list(const json& j, const std::string& field,
                           bool require_increasing, bool require_positive) {
  if (!j.is_array() || j.empty())
    throw ValidationError(field, "must be a nonempty array");
  std::vector<T> out;
  for (const json& v : j) {
    if (!v.is_number()) throw ValidationError(field, "entries must be numeric");
    out.push_back(v.get<T>());
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (require_positive && !(out[i] > 0))
      throw ValidationError(field, "entries must be positive");
    if (require_increasing && i > 0 && out[i] <= out[i - 1])
      throw ValidationError(field, "must be strictly increasing");
  }
  return out;
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("config", "top level must be an object");
  ExperimentConfig cfg;
  cfg.raw = j;

  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ValidationError("name", "must be a string");
    cfg.name = j["name"].get<std::string>();
  } else {
    cfg.name = "experiment";
  }

  if (!j.contains("model"))
    throw ValidationError("model", "missing model specification");
  cfg.model = model_from_json(j["model"], "model");

  if (!j.contains("epsilons"))
    throw ValidationError("epsilons", "missing epsilon list");
  cfg.epsilons = number_list<double>(j["epsilons"], "epsilons", false, false);
  for (double e : cfg.epsilons) {
    if (!(e > 0.0)) throw ValidationError("epsilon", "must be positive");
  }

  if (!j.contains("n_schedule"))
    throw ValidationError("n_schedule", "missing n schedule");
  cfg.n_schedule = number_list<int>(j["n_schedule"], "n_schedule", true, true);
  if (!cfg.model.iid_rule() &&
      cfg.model.max_coords() < static_cast<std::size_t>(cfg.n_schedule.back()))
    throw ValidationError("n_schedule",
                          "largest n exceeds the modeled coordinate count");

  if (j.contains("y_grid")) {
    const json& g = j["y_grid"];
    if (g.is_string() && g.get<std::string>() == "default") {
      cfg.y_grid.clear();
    } else {
      cfg.y_grid = number_list<double>(g, "y_grid", true, true);
      if (cfg.y_grid.back() > 1.0)
        throw ValidationError("y_grid", "points must lie in (0,1]");
    }
  }

  if (j.contains("m_schedule"))
    cfg.m_schedule = number_list<double>(j["m_schedule"], "m_schedule", true, true);
  if (j.contains("t_schedule"))
    cfg.t_schedule = number_list<double>(j["t_schedule"], "t_schedule", true, true);
  if (j.contains("proof_chain_ns"))
    cfg.proof_chain_ns =
        number_list<int>(j["proof_chain_ns"], "proof_chain_ns", true, true);

  if (j.contains("conditions")) {
    const json& c = j["conditions"];
    if (!c.is_object()) throw ValidationError("conditions", "must be an object");
    if (c.contains("psi_tol")) cfg.tols.psi = c["psi_tol"].get<double>();
    if (c.contains("ui_tol")) cfg.tols.ui = c["ui_tol"].get<double>();
    if (c.contains("kolmogorov_tol"))
      cfg.tols.kolmogorov = c["kolmogorov_tol"].get<double>();
    if (c.contains("cesaro_tol")) cfg.tols.cesaro = c["cesaro_tol"].get<double>();
    for (double t : {cfg.tols.psi, cfg.tols.ui, cfg.tols.kolmogorov, cfg.tols.cesaro}) {
      if (!(t > 0.0)) throw ValidationError("conditions", "tolerances must be positive");
    }
  }

  if (!j.contains("budget") || !j["budget"].is_object())
    throw ValidationError("budget", "missing budget object");
  const json& b = j["budget"];
  if (!b.contains("seed"))
    throw ValidationError("budget.seed",
                          "seed is mandatory; wall-clock defaults are not allowed");
  if (!b["seed"].is_number_unsigned())
    throw ValidationError("budget.seed", "must be an unsigned integer");
  cfg.budget.seed = b["seed"].get<std::uint64_t>();
  if (b.contains("mc_reps")) cfg.budget.mc_reps = b["mc_reps"].get<std::size_t>();
  if (b.contains("restarts")) cfg.budget.restarts = b["restarts"].get<std::size_t>();
  if (b.contains("max_passes"))
    cfg.budget.max_passes = b["max_passes"].get<std::size_t>();
  if (cfg.budget.mc_reps < 100)
    throw ValidationError("budget.mc_reps", "must be >= 100");
  if (cfg.budget.max_passes < 1)
    throw ValidationError("budget.max_passes", "must be >= 1");

  if (j.contains("out_dir")) {
    if (!j["out_dir"].is_string())
      throw ValidationError("out_dir", "must be a string");
    cfg.out_dir = j["out_dir"].get<std::string>();
  }
  if (j.contains("jobs")) {
    cfg.jobs = j["jobs"].get<int>();
    if (cfg.jobs < 0) throw ValidationError("jobs", "must be >= 0");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("config parse error in " + path + ": " + e.what());
  }
  return config_from_json(j);
}

std::string canonical_config_bytes(const ExperimentConfig& config) {
  // nlohmann objects keep keys sorted, so a compact dump is canonical.
  return config.raw.dump();
}

}  // namespace nlexp
