// divlab: batch runner for the divergence-equation laboratory.
//
// Subcommands: solve | table | certify | lemmas | bootstrap | report.
// Every run reads one TOML config, writes an artifact directory with the
// config copy, tables/*.csv, reports/*.json, summary.txt and manifest.json,
// and exits 0 (ok), 2 (config error), 3 (numerical failure) or
// 4 (tolerance violation).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "divlab/config.hpp"
#include "divlab/errors.hpp"
#include "divlab/parallel.hpp"
#include "divlab/pipeline.hpp"
#include "divlab/report_io.hpp"

namespace fs = std::filesystem;
using namespace divlab;

namespace {

constexpr const char* kVersion = "divlab 0.1.0";

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ConfigError:
      return 2;
    case ErrorKind::NonzeroMean:
    case ErrorKind::IncompatibleFlux:
    case ErrorKind::IllConditioned:
      return 4;
    default:
      return 3;
  }
}

struct RunPaths {
  fs::path out;
  fs::path tables;
  fs::path reports;
};

RunPaths prepare_out(const std::string& dir, const std::string& config_path) {
  RunPaths p;
  p.out = dir;
  p.tables = p.out / "tables";
  p.reports = p.out / "reports";
  fs::create_directories(p.tables);
  fs::create_directories(p.reports);
  fs::copy_file(config_path, p.out / "config.toml", fs::copy_options::overwrite_existing);
  return p;
}

std::vector<std::pair<std::string, std::string>> residual_lines(const ResidualSummary& rs) {
  return {
      {"mean_f", format_g17(rs.mean_f)},
      {"flux", format_g17(rs.flux)},
      {"f_l2", format_g17(rs.f_l2)},
      {"div_residual_l2", format_g17(rs.div_residual_l2)},
      {"div_residual_rel", format_g17(rs.div_residual_rel)},
      {"boundary_max", format_g17(rs.boundary_max)},
      {"poisson_boundary_residual", format_g17(rs.poisson_boundary_residual)},
      {"stokes_boundary_residual", format_g17(rs.stokes_boundary_residual)},
      {"div_ok", rs.div_ok ? "true" : "false"},
      {"boundary_ok", rs.boundary_ok ? "true" : "false"},
  };
}

int run_subcommand(const std::string& sub, const RunConfig& cfg, const RunPaths& paths,
                   bool force) {
  const AnalyticDomain domain = cfg.make_domain();
  const Polynomial f = cfg.make_f();
  const PipelineOptions popts = cfg.pipeline_options();
  ReportOptions ropts = cfg.report_options();

  if (sub == "lemmas" || sub == "report" || sub == "bootstrap") {
    const int jmax = std::max(cfg.sweep_j, cfg.m_total);
    if (jmax > cfg.j_word_cap && !force) {
      const double words = std::pow(3.0, jmax);
      fail(ErrorKind::ConfigError,
           "word budget 3^" + std::to_string(jmax) + " = " +
               std::to_string(static_cast<long long>(words)) +
               " exceeds the cap; rerun with --force to accept the cost");
    }
  }

  std::vector<std::pair<std::string, std::string>> summary;
  summary.emplace_back("subcommand", sub);

  if (sub == "solve") {
    const DivergenceSolution sol = solve_divergence(domain, f, popts);
    write_solve_report(sol.residuals(), (paths.reports / "solve.json").string());
    for (auto& kv : residual_lines(sol.residuals())) summary.push_back(kv);
    write_summary(summary, (paths.out / "summary.txt").string());
    if (!sol.residuals().div_ok || !sol.residuals().boundary_ok)
      fail(ErrorKind::IllConditioned, "solver residuals above configured tolerances");
    return 0;
  }

  ropts.want_tables = (sub == "table" || sub == "report" || sub == "certify");
  ropts.want_lemmas = (sub == "lemmas" || sub == "bootstrap" || sub == "report");
  ropts.want_certify = (sub == "certify" || sub == "report");
  ropts.want_bootstrap = (sub == "bootstrap" || sub == "report");

  const FullReport report = full_report(domain, f, popts, ropts);

  write_solve_report(report.residuals, (paths.reports / "solve.json").string());
  for (auto& kv : residual_lines(report.residuals)) summary.push_back(kv);

  for (const auto& t : report.tables)
    write_table_csv(t, (paths.tables / (t.subject() + ".csv")).string());

  write_norms_report(report, ropts.weights, (paths.reports / "norms.json").string());
  summary.emplace_back("rho_f", format_g17(report.rho_f.total));
  summary.emplace_back("psi", format_g17(report.psi.total));
  if (report.has_table("u")) {
    summary.emplace_back("rho_u", format_g17(report.rho_u.total));
    summary.emplace_back("rho_grad_phi", format_g17(report.rho_grad_phi.total));
    summary.emplace_back("ratio_rho_u_over_rho_f", format_g17(report.ratio_u_over_f));
  }

  if (ropts.want_lemmas) {
    write_lemmas_report(report.lemma_reports, report.fitted,
                        (paths.reports / "lemmas.json").string());
    summary.emplace_back("c_star", format_g17(report.fitted.c_star));
    summary.emplace_back("k_star", format_g17(report.fitted.k_star));
    summary.emplace_back("lemma_reports", std::to_string(report.lemma_reports.size()));
    summary.emplace_back("lemma_degenerate", std::to_string(report.fitted.degenerate));
  }
  if (ropts.want_certify) {
    write_certify_report(report.certify_u, "u", (paths.reports / "certify.json").string());
    summary.emplace_back("certified", report.certify_u.any_certified ? "true" : "false");
    if (report.certify_u.any_certified) {
      summary.emplace_back("certified_eps2", format_g17(report.certify_u.best_eps2));
      summary.emplace_back("certified_eps1", format_g17(report.certify_u.best_eps1));
    }
  }
  if (ropts.want_bootstrap) {
    write_bootstrap_report(report.bootstrap, (paths.reports / "bootstrap.json").string());
    summary.emplace_back("absorption", report.bootstrap.any_pass ? "true" : "false");
    summary.emplace_back("absorption_max_eps2", format_g17(report.bootstrap.max_passing_eps2));
  }

  write_summary(summary, (paths.out / "summary.txt").string());
  if (!report.residuals.div_ok || !report.residuals.boundary_ok)
    fail(ErrorKind::IllConditioned, "solver residuals above configured tolerances");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divergence-equation laboratory"};
  app.set_version_flag("--version", kVersion);

  constexpr std::uint64_t kSeedUnset = ~0ull;
  std::string config_path;
  std::string out_override;
  bool force = false;
  int threads = -1;
  std::uint64_t seed = kSeedUnset;

  const std::vector<std::string> subs = {"solve", "table", "certify", "lemmas", "bootstrap",
                                         "report"};
  std::string chosen;
  for (const auto& name : subs) {
    CLI::App* sc = app.add_subcommand(name);
    sc->add_option("--config", config_path, "TOML run configuration")->required();
    sc->add_option("--out", out_override, "artifact directory (overrides config)");
    sc->add_flag("--force", force, "accept large word budgets");
    sc->add_option("--threads", threads, "worker threads (0 = hardware)");
    sc->add_option("--seed", seed, "seed recorded in the manifest");
    sc->callback([&chosen, name] { chosen = name; });
  }
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const TomlTable toml = TomlTable::parse_file(config_path);
    RunConfig cfg = RunConfig::from_toml(toml);
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (threads >= 0) cfg.threads = threads;
    if (seed != kSeedUnset) cfg.seed = seed;

    const RunPaths paths = prepare_out(cfg.out_dir, config_path);
    const int rc = run_subcommand(chosen, cfg, paths, force);

    Manifest m;
    m.subcommand = chosen;
    m.config_path = config_path;
    m.config_hash = fnv1a_file(config_path);
    m.version = kVersion;
    m.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.threads = resolve_threads(cfg.threads);
    m.seed = cfg.seed;
    write_manifest(m, (fs::path(cfg.out_dir) / "manifest.json").string());
    return rc;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
