#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "divlab/lemmas.hpp"
#include "divlab/norms.hpp"
#include "divlab/pipeline.hpp"
#include "divlab/tables.hpp"

namespace divlab {

/// 17-significant-digit formatting used for every CSV value; round-trips
/// doubles exactly and keeps repeated runs byte-identical.
std::string format_g17(double v);

/// CSV with header subject,i,word,value; rows sorted by (i, word length,
/// word) in the table's canonical order.
void write_table_csv(const DerivativeTable& table, const std::string& path);

void write_solve_report(const ResidualSummary& rs, const std::string& path);
void write_norms_report(const FullReport& report, const NormWeights& weights,
                        const std::string& path);
void write_lemmas_report(const std::vector<InequalityReport>& reports,
                         const FittedConstants& fitted, const std::string& path);
void write_certify_report(const CertifyResult& result, const std::string& subject,
                          const std::string& path);
void write_bootstrap_report(const BootstrapResult& result, const std::string& path);

struct Manifest {
  std::string subcommand;
  std::string config_path;
  std::uint64_t config_hash = 0;
  std::string version;
  double wall_seconds = 0.0;
  int threads = 0;
  std::uint64_t seed = 0;
};

void write_manifest(const Manifest& m, const std::string& path);

/// Plain key = value lines (17 significant digits); no timestamps, so
/// repeated runs are byte-identical.
void write_summary(const std::vector<std::pair<std::string, std::string>>& lines,
                   const std::string& path);

}  // namespace divlab
