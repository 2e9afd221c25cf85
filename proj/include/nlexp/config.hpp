#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlexp/scenario.hpp"

namespace nlexp {

struct ConditionTols {
  double psi = 0.1;
  double ui = 0.1;
  double kolmogorov = 0.25;
  double cesaro = 0.05;
};

struct ExperimentConfig {
  std::string name;
  SequenceModel model = SequenceModel::iid(
      AmbiguitySet({Distribution::uniform(0.0, 1.0)}));
  std::vector<double> epsilons;
  std::vector<int> n_schedule;
  std::vector<double> y_grid;            // empty -> default grid
  std::vector<double> m_schedule{1.0, 2.0, 4.0, 8.0};
  std::vector<double> t_schedule{1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
  std::vector<int> proof_chain_ns;       // empty -> schedule entries <= 100
  ConditionTols tols;
  EstimateBudget budget;
  std::string out_dir = "out";
  int jobs = 0;                          // 0 keeps the runtime default
  nlohmann::json raw;                    // effective config for hashing
};

// Parses and validates the structured-text experiment document. Seeds are
// mandatory: a config without one fails validation rather than falling back
// to wall-clock entropy.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_json(const nlohmann::json& j);

// Canonical bytes of the effective config (sorted keys, minimal spacing),
// the input of the manifest's SHA-256 hash.
std::string canonical_config_bytes(const ExperimentConfig& config);

}  // namespace nlexp
