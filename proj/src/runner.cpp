#include "nlexp/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nlexp/report_io.hpp"
#include "nlexp/serialize.hpp"
#include "nlexp/version.hpp"

namespace nlexp {

namespace {

namespace fs = std::filesystem;

std::ofstream open_artifact(const fs::path& dir, const std::string& name,
                            std::vector<std::string>& files) {
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw Error("cannot write artifact: " + (dir / name).string());
  files.push_back(name);
  return out;
}

// Distinct member laws of the first coordinate, for the per-member
// first-moment-free condition report.
std::vector<Distribution> distinct_members(const SequenceModel& model) {
  std::vector<Distribution> out;
  std::vector<std::string> seen;
  const std::size_t coords = model.iid_rule() ? 1 : model.max_coords();
  for (std::size_t k = 1; k <= coords; ++k) {
    for (const Distribution& d : model.coord(k).members()) {
      const std::string key = nlexp::to_json(d).dump();
      bool duplicate = false;
      for (const std::string& s : seen) {
        if (s == key) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) {
        seen.push_back(key);
        out.push_back(d);
      }
    }
  }
  return out;
}

}  // namespace

RunManifest run(const ExperimentConfig& config, bool quick, std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();

#ifdef _OPENMP
  if (config.jobs > 0) omp_set_num_threads(config.jobs);
#endif

  EstimateBudget budget = config.budget;
  if (quick) {
    budget.mc_reps = std::max<std::size_t>(100, budget.mc_reps / 10);
  }

  const fs::path out_dir(config.out_dir);
  fs::create_directories(out_dir);

  RunManifest manifest;
  manifest.version = kVersion;
  manifest.config_hash = sha256_hex(canonical_config_bytes(config));

  const std::vector<double> grid =
      config.y_grid.empty() ? default_y_grid() : config.y_grid;
  const bool product = config.model.dependence() == Dependence::kProduct;

  // Stage 1: theorem conditions.
  log << "[conditions] psi / uniform integrability / first-moment-free / cesaro\n";
  const PsiVerdict psi_verdict = check_psi_vanishes(
      config.model, config.n_schedule, grid, config.tols.psi);
  std::vector<PsiProfile> profiles;
  for (int n : config.n_schedule) {
    profiles.push_back(psi_profile(config.model, n, grid));
  }
  const UiVerdict ui_verdict = check_uniform_integrability(
      profiles, config.m_schedule, config.tols.ui);

  const std::vector<Distribution> members = distinct_members(config.model);
  std::vector<TrendVerdict> kolmogorov;
  bool kolmogorov_all = true;
  for (const Distribution& d : members) {
    kolmogorov.push_back(
        kolmogorov_condition(d, config.t_schedule, config.tols.kolmogorov));
    kolmogorov_all = kolmogorov_all && kolmogorov.back().pass;
  }
  const CesaroResult cesaro = cesaro_condition(
      config.model, config.n_schedule.back(), config.tols.cesaro);

  manifest.conditions_passed =
      psi_verdict.pass && ui_verdict.pass && kolmogorov_all && cesaro.pass;

  // Stage 2: truncated means and convergence experiments (product models).
  std::vector<TruncatedMeans> means;
  std::vector<ConvergenceReport> convergence;
  std::vector<ProofChainReport> proof_reports;
  if (product) {
    for (int n : config.n_schedule) {
      means.push_back(mu_bounds(config.model, n));
    }
    ConditionSpec spec;
    spec.y_grid = grid;
    spec.m_schedule = config.m_schedule;
    spec.psi_tol = config.tols.psi;
    spec.ui_tol = config.tols.ui;
    for (double eps : config.epsilons) {
      log << "[convergence] epsilon=" << eps << "\n";
      convergence.push_back(convergence_experiment(
          config.model, eps, config.n_schedule, budget, spec));
    }

    std::vector<int> proof_ns = config.proof_chain_ns;
    if (proof_ns.empty()) {
      for (int n : config.n_schedule) {
        if (n <= 100) proof_ns.push_back(n);
      }
    }
    for (int n : proof_ns) {
      log << "[proof-chain] n=" << n << "\n";
      proof_reports.push_back(proof_chain_check(config.model, n));
    }
  } else {
    log << "[convergence] skipped: path capacities need product dependence\n";
  }

  // Stage 3: artifacts.
  {
    std::ofstream out = open_artifact(out_dir, "psi_profiles.csv", manifest.files);
    write_psi_profiles_csv(out, profiles);
  }
  {
    std::ofstream out =
        open_artifact(out_dir, "truncated_means.csv", manifest.files);
    write_truncated_means_csv(out, means);
  }
  {
    std::ofstream out = open_artifact(out_dir, "convergence.csv", manifest.files);
    write_convergence_csv(out, convergence);
  }
  {
    std::ofstream out = open_artifact(out_dir, "proof_chain.csv", manifest.files);
    write_proof_chain_csv(out, proof_reports);
  }

  manifest.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  {
    std::ofstream out = open_artifact(out_dir, "summary.txt", manifest.files);
    out << "name=" << config.name << "\n";
    out << "version=" << kVersion << "\n";
    out << "config_hash=" << manifest.config_hash << "\n";
    out << "quick=" << (quick ? 1 : 0) << "\n";
    out << "mc_reps=" << budget.mc_reps << "\n";
    out << "psi_pass=" << (psi_verdict.pass ? "true" : "false")
        << " worst_n=" << psi_verdict.worst_n
        << " worst_y=" << format_double(psi_verdict.worst_y)
        << " worst_value=" << format_double(psi_verdict.worst_value) << "\n";
    out << "ui_pass=" << (ui_verdict.pass ? "true" : "false")
        << " worst_excess=" << format_double(ui_verdict.worst_excess)
        << " at_M=" << format_double(ui_verdict.at_level) << "\n";
    for (std::size_t i = 0; i < members.size(); ++i) {
      out << "kolmogorov_member_" << i << "="
          << (kolmogorov[i].pass ? "true" : "false")
          << " last=" << format_double(kolmogorov[i].values.back()) << "\n";
    }
    out << "cesaro_pass=" << (cesaro.pass ? "true" : "false")
        << " value=" << format_double(cesaro.value) << "\n";
    for (const ConvergenceReport& report : convergence) {
      for (const ConvergenceRow& row : report.rows) {
        out << "convergence eps=" << format_double(row.epsilon)
            << " n=" << row.n << " v_upper=" << format_double(row.upper.p_hat)
            << " v_lower=" << format_double(row.lower.p_hat)
            << " v_band=" << format_double(row.v_band)
            << " budget_exhausted=" << (row.budget_exhausted ? 1 : 0)
            << " seconds=" << format_double(row.seconds) << "\n";
      }
    }
    for (const ProofChainReport& report : proof_reports) {
      out << "proof_chain n=" << report.n
          << " all_hold=" << (report.all_hold ? "true" : "false") << "\n";
    }
    out << "conditions_passed="
        << (manifest.conditions_passed ? "true" : "false") << "\n";
    out << "seconds=" << format_double(manifest.seconds) << "\n";
  }

  {
    std::ofstream out(out_dir / "manifest.txt", std::ios::binary);
    if (!out) throw Error("cannot write manifest");
    out << "tool=nlexp\n";
    out << "version=" << kVersion << "\n";
    out << "config_hash=sha256:" << manifest.config_hash << "\n";
    out << "conditions_passed="
        << (manifest.conditions_passed ? "true" : "false") << "\n";
    out << "files=" << manifest.files.size() + 1 << "\n";
    for (const std::string& f : manifest.files) out << "file=" << f << "\n";
    out << "file=manifest.txt\n";
    out << "seconds=" << format_double(manifest.seconds) << "\n";
    manifest.files.push_back("manifest.txt");
  }

  log << "[done] conditions_passed="
      << (manifest.conditions_passed ? "true" : "false") << " seconds="
      << manifest.seconds << "\n";
  return manifest;
}

}  // namespace nlexp
