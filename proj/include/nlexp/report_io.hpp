#pragma once

#include <ostream>
#include <span>
#include <string>

#include "nlexp/scenario.hpp"

namespace nlexp {

// Deterministic CSV emission: fixed column order, "%.17g" doubles, "\n"
// line endings. Identical inputs produce identical bytes.

std::string format_double(double v);

void write_psi_profiles_csv(std::ostream& out,
                            std::span<const PsiProfile> profiles);
void write_truncated_means_csv(std::ostream& out,
                               std::span<const TruncatedMeans> means);
void write_convergence_csv(std::ostream& out,
                           std::span<const ConvergenceReport> reports);
void write_proof_chain_csv(std::ostream& out,
                           std::span<const ProofChainReport> reports);

std::string sha256_hex(std::string_view bytes);

}  // namespace nlexp
