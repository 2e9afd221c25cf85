#include "nlexp/report_io.hpp"

#include <cstdio>

#include <openssl/evp.h>

#include "nlexp/errors.hpp"

namespace nlexp {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_psi_profiles_csv(std::ostream& out,
                            std::span<const PsiProfile> profiles) {
  out << "n,y,psi\n";
  for (const PsiProfile& p : profiles) {
    for (std::size_t i = 0; i < p.y.size(); ++i) {
      out << p.level << ',' << format_double(p.y[i]) << ','
          << format_double(p.value[i]) << '\n';
    }
  }
}

void write_truncated_means_csv(std::ostream& out,
                               std::span<const TruncatedMeans> means) {
  out << "n,k,mu_plus,mu_minus\n";
  for (const TruncatedMeans& tm : means) {
    for (std::size_t k = 0; k < tm.mu_plus.size(); ++k) {
      out << tm.level << ',' << (k + 1) << ',' << format_double(tm.mu_plus[k])
          << ',' << format_double(tm.mu_minus[k]) << '\n';
    }
  }
}

void write_convergence_csv(std::ostream& out,
                           std::span<const ConvergenceReport> reports) {
  out << "n,epsilon,v_upper_hat,stderr_upper,v_lower_hat,stderr_lower,"
         "v_band_hat,stderr_band,psi_pass,ui_pass\n";
  for (const ConvergenceReport& report : reports) {
    for (const ConvergenceRow& row : report.rows) {
      out << row.n << ',' << format_double(row.epsilon) << ','
          << format_double(row.upper.p_hat) << ','
          << format_double(row.upper.std_err) << ','
          << format_double(row.lower.p_hat) << ','
          << format_double(row.lower.std_err) << ','
          << format_double(row.v_band) << ','
          << format_double(row.band_std_err) << ','
          << (report.psi.pass ? 1 : 0) << ',' << (report.ui.pass ? 1 : 0)
          << '\n';
    }
  }
}

void write_proof_chain_csv(std::ostream& out,
                           std::span<const ProofChainReport> reports) {
  out << "n,check,lhs,rhs,holds\n";
  for (const ProofChainReport& report : reports) {
    for (const ProofBound& b : report.bounds) {
      out << report.n << ',' << b.name << ',' << format_double(b.lhs) << ','
          << format_double(b.rhs) << ',' << (b.holds ? 1 : 0) << '\n';
    }
  }
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr ||
      EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256 digest failed");
  }
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

}  // namespace nlexp
