#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "divlab/domain.hpp"
#include "divlab/pipeline.hpp"

namespace divlab {

/// Minimal TOML reader covering the subset the run configs use: comments,
/// [section] headers, and key = value with strings, numbers, booleans, and
/// (nested) arrays of numbers. Unknown syntax is a ConfigError with the
/// offending line number.
class TomlTable {
 public:
  static TomlTable parse_file(const std::string& path);
  static TomlTable parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_number(const std::string& section, const std::string& key, double fallback) const;
  int get_int(const std::string& section, const std::string& key, int fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> get_array(const std::string& section, const std::string& key,
                                const std::vector<double>& fallback) const;
  std::vector<std::vector<double>> get_array2(const std::string& section,
                                              const std::string& key) const;

  /// All keys actually present, as "section.key"; used to reject typos.
  std::vector<std::string> keys() const;

 private:
  struct Value {
    std::string raw;       // scalar token or serialized array
    bool is_array = false;
    std::vector<std::vector<double>> rows;  // arrays (flat arrays have one row)
    bool flat = false;
    int line = 0;
  };
  std::map<std::string, Value> values_;
  std::string origin_;

  const Value* find(const std::string& section, const std::string& key) const;
};

struct RunConfig {
  // [domain]
  std::string domain_kind = "disk";
  std::vector<double> domain_params;
  std::vector<std::vector<double>> domain_coeffs;  // (a, b, coeff) rows
  Vec2 domain_center{0.0, 0.0};
  double enlargement = 1.2;

  // [f] monomials as (a, b, coeff) rows
  std::vector<std::vector<double>> f_monomials = {{1, 0, 1}};

  // [solver]
  int poisson_charges = 96;
  int stokes_sources = 96;
  int collocation_ratio = 2;
  double radius_factor = 1.5;
  double svd_cutoff = 1e-13;
  double residual_tol = 1e-6;

  // [quadrature]
  int radial = 20;
  int angular = 40;
  int boundary = 256;

  // [norms]
  int m_total = 6;
  double eps1 = 3.125e-4;
  double eps2 = 3.125e-2;
  std::vector<double> eps2_grid = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625,
                                   0.0078125, 0.00390625};
  double tie_ratio = 100.0;
  double decay_threshold = 0.9;

  // [lemmas]
  int sweep_i = 3;
  int sweep_j = 3;
  int j_word_cap = 6;  // refuse larger word budgets without --force

  // [tolerances]
  double mean_tol = 1e-9;
  double div_tol = 1e-6;
  double boundary_tol = 1e-6;

  // [output]
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int threads = 0;

  static RunConfig from_toml(const TomlTable& t);
  AnalyticDomain make_domain() const;
  Polynomial make_f() const;
  PipelineOptions pipeline_options() const;
  ReportOptions report_options() const;
};

/// FNV-1a hash of a file's bytes, for the run manifest.
std::uint64_t fnv1a_file(const std::string& path);

}  // namespace divlab
