#include "divlab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "divlab/errors.hpp"

namespace divlab {

namespace {

using json = nlohmann::ordered_json;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::ConfigError, "cannot write '" + path + "'");
  return out;
}

void dump(const json& j, const std::string& path) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_table_csv(const DerivativeTable& table, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "subject,i,word,value\n";
  for (int i = 0; i <= table.i_max(); ++i)
    for (std::size_t w = 0; w < table.words().size(); ++w)
      out << table.subject() << ',' << i << ',' << table.words()[w].str() << ','
          << format_g17(table.entry(i, w)) << '\n';
}

void write_solve_report(const ResidualSummary& rs, const std::string& path) {
  json j;
  j["mean_f"] = rs.mean_f;
  j["flux"] = rs.flux;
  j["f_l2"] = rs.f_l2;
  j["div_residual_l2"] = rs.div_residual_l2;
  j["div_residual_rel"] = rs.div_residual_rel;
  j["boundary_max"] = rs.boundary_max;
  j["poisson_boundary_residual"] = rs.poisson_boundary_residual;
  j["stokes_boundary_residual"] = rs.stokes_boundary_residual;
  j["div_ok"] = rs.div_ok;
  j["boundary_ok"] = rs.boundary_ok;
  dump(j, path);
}

void write_norms_report(const FullReport& report, const NormWeights& weights,
                        const std::string& path) {
  json j;
  j["eps1"] = weights.eps1;
  j["eps2"] = weights.eps2;
  j["m"] = weights.m_total;
  const auto rho_json = [](const RhoBreakdown& r) {
    json o;
    o["total"] = r.total;
    o["b_part"] = r.b_part;
    o["bc_part"] = r.bc_part;
    o["order_sums"] = r.order_sums;
    return o;
  };
  j["rho_f"] = rho_json(report.rho_f);
  if (report.has_table("u")) {
    j["rho_u"] = rho_json(report.rho_u);
    j["rho_grad_phi"] = rho_json(report.rho_grad_phi);
    j["ratio_rho_u_over_rho_f"] = report.ratio_u_over_f;
  }
  json psi;
  psi["total"] = report.psi.total;
  psi["velocity"] = report.psi.velocity;
  psi["pressure_high"] = report.psi.pressure_high;
  psi["pressure_mid"] = report.psi.pressure_mid;
  psi["pressure_low"] = report.psi.pressure_low;
  j["psi"] = psi;
  dump(j, path);
}

void write_lemmas_report(const std::vector<InequalityReport>& reports,
                         const FittedConstants& fitted, const std::string& path) {
  json arr = json::array();
  for (const auto& r : reports) {
    json o;
    o["lemma"] = r.lemma;
    o["tag"] = r.tag;
    o["i"] = r.i;
    o["j"] = r.j;
    o["lhs"] = r.lhs;
    o["rhs"] = r.rhs;
    o["ratio"] = finite_or_string(r.ratio);
    o["degenerate"] = r.degenerate;
    if (r.fitted_k) o["fitted_k"] = finite_or_string(*r.fitted_k);
    arr.push_back(std::move(o));
  }
  json j;
  j["reports"] = std::move(arr);
  j["c_star"] = fitted.c_star;
  j["k_star"] = fitted.k_star;
  j["counted"] = fitted.counted;
  j["degenerate"] = fitted.degenerate;
  dump(j, path);
}

void write_certify_report(const CertifyResult& result, const std::string& subject,
                          const std::string& path) {
  json grid = json::array();
  for (const auto& pt : result.grid) {
    json o;
    o["eps1"] = pt.eps1;
    o["eps2"] = pt.eps2;
    json ratios = json::array();
    for (double r : pt.ratios) ratios.push_back(finite_or_string(r));
    o["ratios"] = std::move(ratios);
    o["certified"] = pt.certified;
    grid.push_back(std::move(o));
  }
  json j;
  j["subject"] = subject;
  j["grid"] = std::move(grid);
  j["any_certified"] = result.any_certified;
  if (result.any_certified) {
    j["best_eps1"] = result.best_eps1;
    j["best_eps2"] = result.best_eps2;
  }
  dump(j, path);
}

void write_bootstrap_report(const BootstrapResult& result, const std::string& path) {
  json grid = json::array();
  for (const auto& pt : result.grid) {
    json o;
    o["eps1"] = pt.eps1;
    o["eps2"] = pt.eps2;
    o["s1"] = pt.s1;
    o["s2"] = pt.s2;
    o["s3"] = pt.s3;
    o["psi"] = pt.psi;
    o["rho_f"] = pt.rho_f;
    o["pass_s1"] = pt.pass_s1;
    o["pass_s2"] = pt.pass_s2;
    o["pass_s3"] = pt.pass_s3;
    o["pass"] = pt.pass;
    grid.push_back(std::move(o));
  }
  json j;
  j["m"] = result.m_total;
  j["c_star"] = result.c_star;
  j["k_star"] = result.k_star;
  j["tie_ratio"] = result.tie_ratio;
  j["grid"] = std::move(grid);
  j["any_pass"] = result.any_pass;
  j["max_passing_eps2"] = result.max_passing_eps2;
  dump(j, path);
}

void write_manifest(const Manifest& m, const std::string& path) {
  json j;
  j["subcommand"] = m.subcommand;
  j["config"] = m.config_path;
  char hash[32];
  std::snprintf(hash, sizeof hash, "fnv1a64:%016llx",
                static_cast<unsigned long long>(m.config_hash));
  j["config_hash"] = hash;
  j["version"] = m.version;
  j["wall_seconds"] = m.wall_seconds;
  j["threads"] = m.threads;
  j["seed"] = m.seed;
  dump(j, path);
}

void write_summary(const std::vector<std::pair<std::string, std::string>>& lines,
                   const std::string& path) {
  std::ofstream out = open_out(path);
  for (const auto& [k, v] : lines) out << k << " = " << v << "\n";
}

}  // namespace divlab
