#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "nlexp/config.hpp"

namespace nlexp {

struct RunManifest {
  std::string config_hash;
  std::string version;
  std::vector<std::string> files;   // every artifact written to out_dir
  double seconds = 0.0;
  bool conditions_passed = false;   // psi, UI, Kolmogorov, Cesaro verdicts
};

// Executes the whole pipeline: condition checks, per-epsilon convergence
// experiments, proof-chain verification, then CSVs + summary + manifest in
// config.out_dir. A failed theorem condition is a scientific outcome, not an
// execution error: the run completes and the manifest records the verdict.
// Execution errors propagate as exceptions.
RunManifest run(const ExperimentConfig& config, bool quick, std::ostream& log);

// Exit codes for the CLI: completion with all conditions passing, completion
// with at least one condition failing, and execution failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitExecutionError = 1;
inline constexpr int kExitConditionFail = 2;

}  // namespace nlexp
