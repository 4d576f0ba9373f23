#pragma once

#include <array>
#include <string>
#include <vector>

#include "divlab/domain.hpp"
#include "divlab/fields.hpp"
#include "divlab/lemmas.hpp"
#include "divlab/norms.hpp"
#include "divlab/poisson.hpp"
#include "divlab/stokes.hpp"
#include "divlab/tables.hpp"

namespace divlab {

struct PipelineOptions {
  MfsOptions poisson;
  StokesOptions stokes;
  /// |mean of f| tolerance relative to ||f|| (exact quadrature of a
  /// polynomial, so this is tight).
  double mean_tol = 1e-9;
  double div_tol = 1e-6;
  double boundary_tol = 1e-6;
  int quad_radial = 20;
  int quad_angular = 40;
  int boundary_points = 256;
  int threads = 0;
};

struct ResidualSummary {
  double mean_f = 0.0;
  double flux = 0.0;
  double f_l2 = 0.0;
  double div_residual_l2 = 0.0;
  double div_residual_rel = 0.0;
  double boundary_max = 0.0;
  double poisson_boundary_residual = 0.0;
  double stokes_boundary_residual = 0.0;
  bool div_ok = false;
  bool boundary_ok = false;
};

/// u = v - grad(phi) with p = q + f; all evaluators are exact jets of the
/// closed-form representation.
class DivergenceSolution {
 public:
  DivergenceSolution(AnalyticDomain domain, Polynomial f, PoissonSolution phi,
                     StokesSolution stokes);

  const AnalyticDomain& domain() const { return domain_; }
  const Polynomial& f() const { return f_; }
  const PoissonSolution& phi() const { return phi_; }
  const StokesSolution& stokes() const { return stokes_; }
  const ResidualSummary& residuals() const { return residuals_; }
  ResidualSummary& residuals() { return residuals_; }

  /// Jets of (u1, u2) at a point.
  std::array<Jet, 2> u_jet(Vec2 p, int order) const;
  /// Jet of the recovered pressure p = q + f.
  Jet p_jet(Vec2 p, int order) const;
  Vec2 u(Vec2 p) const;

  /// Subject evaluators for table building.
  MultiJetFn u_subject() const;
  MultiJetFn v_subject() const;
  MultiJetFn q_subject() const;
  MultiJetFn grad_phi_subject() const;
  MultiJetFn f_subject() const;

 private:
  AnalyticDomain domain_;
  Polynomial f_;
  PoissonSolution phi_;
  StokesSolution stokes_;
  ResidualSummary residuals_;
};

/// Zero-mean check, enlarged-domain Poisson solve, compatibility check,
/// Stokeslet solve, and residual audit.
DivergenceSolution solve_divergence(const AnalyticDomain& domain, const Polynomial& f,
                                    const PipelineOptions& opts = {});

/// u0 = J grad(rho^2): divergence-free (rotated gradient) and vanishing on
/// the boundary (grad rho^2 = 2 rho grad rho). Returned as the component
/// polynomials.
std::array<Polynomial, 2> nonuniqueness_witness(const AnalyticDomain& domain);

struct ReportOptions {
  /// Truncation order for the norm tables (rectangle m x m).
  int m_total = 6;
  NormWeights weights{0.03125 / 100.0, 0.03125, 6};
  CertifyOptions certify;
  std::vector<double> bootstrap_eps2 = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625,
                                        0.0078125, 0.00390625};
  double tie_ratio = 100.0;
  /// Lemma sweep caps.
  int sweep_i = 3;
  int sweep_j = 3;
  int table_radial = 20;
  int table_angular = 40;
  int threads = 0;

  bool want_tables = true;
  bool want_lemmas = true;
  bool want_certify = true;
  bool want_bootstrap = true;
};

struct FullReport {
  ResidualSummary residuals;

  // Derivative tables (rectangles m x m; commutators sweep_i x sweep_j).
  std::vector<DerivativeTable> tables;

  std::vector<InequalityReport> lemma_reports;
  FittedConstants fitted;

  RhoBreakdown rho_u, rho_f, rho_grad_phi;
  PsiBreakdown psi;
  double ratio_u_over_f = 0.0;

  CertifyResult certify_u;
  BootstrapResult bootstrap;

  const DerivativeTable& table(const std::string& subject) const;
  bool has_table(const std::string& subject) const;
};

/// End-to-end bundle: solve, tables, norms, lemma audits, certification,
/// bootstrap absorption.
FullReport full_report(const AnalyticDomain& domain, const Polynomial& f,
                       const PipelineOptions& popts, const ReportOptions& ropts);

}  // namespace divlab
