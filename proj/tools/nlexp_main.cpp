#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nlexp/runner.hpp"
#include "nlexp/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nlexp: sublinear-expectation engine and law-of-large-numbers "
               "experiment harness"};
  app.set_version_flag("--version", std::string(nlexp::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed_override = 0;
  bool seed_given = false;
  int jobs = 0;
  bool quick = false;

  CLI::App* run_cmd = app.add_subcommand("run", "execute an experiment config");
  run_cmd->add_option("--config", config_path, "experiment config (JSON)")
      ->required();
  run_cmd->add_option("--out-dir", out_dir, "output directory override");
  run_cmd
      ->add_option_function<std::uint64_t>(
          "--seed",
          [&](const std::uint64_t& v) {
            seed_override = v;
            seed_given = true;
          },
          "seed override (replaces budget.seed before hashing)")
      ->expected(1);
  run_cmd->add_option("--jobs", jobs, "worker threads (0 = runtime default)");
  run_cmd->add_flag("--quick", quick, "divide mc_reps by 10 (floor 100)");

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "parse and validate a config, then exit");
  validate_cmd->add_option("--config", config_path, "experiment config (JSON)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) {
      nlexp::ExperimentConfig cfg = nlexp::load_config(config_path);
      std::cout << "ok: " << cfg.name << "\n";
      return nlexp::kExitOk;
    }
    nlexp::ExperimentConfig cfg = nlexp::load_config(config_path);
    if (seed_given) {
      cfg.budget.seed = seed_override;
      cfg.raw["budget"]["seed"] = seed_override;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (jobs > 0) cfg.jobs = jobs;
    const nlexp::RunManifest manifest = nlexp::run(cfg, quick, std::cout);
    return manifest.conditions_passed ? nlexp::kExitOk
                                      : nlexp::kExitConditionFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return nlexp::kExitExecutionError;
  }
}
