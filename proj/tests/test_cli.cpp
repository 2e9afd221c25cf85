#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "nlexp/runner.hpp"
#include "nlexp/serialize.hpp"
#include "nlexp/report_io.hpp"
#include "nlexp/errors.hpp"

using namespace nlexp;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json minimal_config() {
  return json::parse(R"({
    "name": "unit_minimal",
    "model": {
      "iid": {"members": [{"kind": "uniform", "low": 0.0, "high": 1.0}]},
      "dependence": "product"
    },
    "epsilons": [0.25],
    "n_schedule": [5, 10],
    "y_grid": [0.25, 0.5, 0.75, 1.0],
    "budget": {"mc_reps": 400, "restarts": 1, "max_passes": 2, "seed": 42}
  })");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("distribution and model serialization round trips") {
  const std::vector<Distribution> laws = {
      Distribution::normal(0.25, 2.0),
      Distribution::uniform(-1.0, 1.5),
      Distribution::two_point(-1.0, 1.0, 0.6),
      Distribution::discrete_atoms({{-2.0, 0.5}, {1.0, 0.5}}),
      Distribution::pareto(2.5, 0.5),
      Distribution::cauchy(0.0, 1.0),
      Distribution::symmetric_log_tail()};
  for (const Distribution& d : laws) {
    const json j = to_json(d);
    const Distribution back = distribution_from_json(j, "rt");
    CHECK(to_json(back) == j);
  }

  SequenceModel model = SequenceModel::iid(AmbiguitySet(
      {Distribution::discrete_atoms({{-1.0, 0.5}, {1.0, 0.5}})}));
  model.set_joint_pairs({JointLaw{{{1.0, 1.0, 0.5}, {-1.0, -1.0, 0.5}}}});
  const json mj = to_json(model);
  const SequenceModel back = model_from_json(mj, "rt");
  CHECK(back.dependence() == Dependence::kJointPairs);
  CHECK(to_json(back) == mj);
}

TEST_CASE("config validation pinpoints offending fields") {
  CHECK_NOTHROW(config_from_json(minimal_config()));

  json bad = minimal_config();
  bad["epsilons"] = {0.0};
  CHECK_THROWS_WITH_AS(config_from_json(bad), "epsilon: must be positive",
                       ValidationError);

  bad = minimal_config();
  bad["budget"].erase("seed");
  CHECK_THROWS_AS(config_from_json(bad), ValidationError);

  bad = minimal_config();
  bad["n_schedule"] = {10, 10};
  CHECK_THROWS_AS(config_from_json(bad), ValidationError);

  bad = minimal_config();
  bad["budget"]["mc_reps"] = 10;
  CHECK_THROWS_AS(config_from_json(bad), ValidationError);

  bad = minimal_config();
  bad["model"]["iid"]["members"][0]["kind"] = "mystery";
  CHECK_THROWS_AS(config_from_json(bad), ValidationError);

  bad = minimal_config();
  bad["model"].erase("iid");
  CHECK_THROWS_AS(config_from_json(bad), ValidationError);
}

TEST_CASE("load_config reports parse errors with context") {
  const fs::path dir = fs::temp_directory_path() / "nlexp_cli_test";
  fs::create_directories(dir);
  const fs::path bad_path = dir / "bad.json";
  std::ofstream(bad_path) << "{ not json";
  CHECK_THROWS_AS(load_config(bad_path.string()), ParseError);
  CHECK_THROWS_AS(load_config((dir / "missing.json").string()), ParseError);
}

TEST_CASE("run produces a complete deterministic artifact set") {
  const fs::path base = fs::temp_directory_path() / "nlexp_run_test";
  fs::remove_all(base);

  json cfg_json = minimal_config();
  ExperimentConfig cfg = config_from_json(cfg_json);
  cfg.out_dir = (base / "a").string();
  std::ostringstream log;
  const RunManifest m1 = run(cfg, /*quick=*/false, log);

  CHECK(m1.conditions_passed);  // bounded support passes everything
  CHECK(m1.config_hash.size() == 64);
  CHECK(m1.config_hash ==
        sha256_hex(canonical_config_bytes(cfg)));

  // Manifest completeness: exactly the listed files appear on disk.
  std::set<std::string> on_disk;
  for (const auto& entry : fs::directory_iterator(base / "a")) {
    on_disk.insert(entry.path().filename().string());
  }
  CHECK(on_disk == std::set<std::string>(m1.files.begin(), m1.files.end()));

  // Re-running with the same config and seed is byte-identical on CSVs.
  cfg.out_dir = (base / "b").string();
  run(cfg, false, log);
  for (const std::string& name :
       {"psi_profiles.csv", "truncated_means.csv", "convergence.csv",
        "proof_chain.csv"}) {
    CHECK(slurp(base / "a" / name) == slurp(base / "b" / name));
    CHECK_FALSE(slurp(base / "a" / name).empty());
  }

  // A different seed changes the Monte Carlo columns.
  ExperimentConfig cfg2 = config_from_json(cfg_json);
  cfg2.budget.seed = 43;
  cfg2.raw["budget"]["seed"] = 43;
  cfg2.out_dir = (base / "c").string();
  const RunManifest m2 = run(cfg2, false, log);
  CHECK(m2.config_hash != m1.config_hash);

  fs::remove_all(base);
}

TEST_CASE("joint pair models complete with cesaro verdicts only") {
  json cfg_json = minimal_config();
  cfg_json["name"] = "comonotone";
  cfg_json["model"] = json::parse(R"({
    "iid": {"members": [
      {"kind": "discrete_atoms", "atoms": [[-1.0, 0.5], [1.0, 0.5]]}
    ]},
    "dependence": {"joint_pairs": [
      {"atoms": [[1.0, 1.0, 0.5], [-1.0, -1.0, 0.5]]}
    ]}
  })");
  const fs::path dir = fs::temp_directory_path() / "nlexp_joint_test";
  fs::remove_all(dir);
  ExperimentConfig cfg = config_from_json(cfg_json);
  cfg.out_dir = dir.string();
  std::ostringstream log;
  const RunManifest m = run(cfg, true, log);
  // The comonotone pair violates the Cesaro condition; the run completes
  // and reports the failure rather than erroring out.
  CHECK_FALSE(m.conditions_passed);
  const std::string summary = slurp(dir / "summary.txt");
  CHECK(summary.find("cesaro_pass=false") != std::string::npos);
  fs::remove_all(dir);
}
