#include "divlab/pipeline.hpp"

#include <cmath>
#include <cstdio>

#include "divlab/errors.hpp"
#include "divlab/parallel.hpp"

namespace divlab {

DivergenceSolution::DivergenceSolution(AnalyticDomain domain, Polynomial f, PoissonSolution phi,
                                       StokesSolution stokes)
    : domain_(std::move(domain)), f_(std::move(f)), phi_(std::move(phi)),
      stokes_(std::move(stokes)) {}

std::array<Jet, 2> DivergenceSolution::u_jet(Vec2 p, int order) const {
  const auto vq = stokes_.evaluate_jets(p, order);
  const auto gphi = phi_.grad_jet(p, order);
  return {vq[0] - gphi[0], vq[1] - gphi[1]};
}

Jet DivergenceSolution::p_jet(Vec2 p, int order) const {
  return stokes_.evaluate_jets(p, order)[2] + taylor_jet(f_, p, order);
}

Vec2 DivergenceSolution::u(Vec2 p) const { return stokes_.velocity(p) - phi_.grad(p); }

MultiJetFn DivergenceSolution::u_subject() const {
  const StokesSolution st = stokes_;
  const PoissonSolution ph = phi_;
  return [st, ph](Vec2 p, int order) {
    const auto vq = st.evaluate_jets(p, order);
    const auto gphi = ph.grad_jet(p, order);
    return std::vector<Jet>{vq[0] - gphi[0], vq[1] - gphi[1]};
  };
}

MultiJetFn DivergenceSolution::v_subject() const {
  const StokesSolution st = stokes_;
  return [st](Vec2 p, int order) {
    const auto vq = st.evaluate_jets(p, order);
    return std::vector<Jet>{vq[0], vq[1]};
  };
}

MultiJetFn DivergenceSolution::q_subject() const {
  const StokesSolution st = stokes_;
  return [st](Vec2 p, int order) {
    return std::vector<Jet>{st.evaluate_jets(p, order)[2]};
  };
}

MultiJetFn DivergenceSolution::grad_phi_subject() const {
  const PoissonSolution ph = phi_;
  return [ph](Vec2 p, int order) {
    const auto g = ph.grad_jet(p, order);
    return std::vector<Jet>{g[0], g[1]};
  };
}

MultiJetFn DivergenceSolution::f_subject() const { return polynomial_subject(f_); }

DivergenceSolution solve_divergence(const AnalyticDomain& domain, const Polynomial& f,
                                    const PipelineOptions& opts) {
  const QuadratureSet vol = domain.volume_quadrature(opts.quad_radial, opts.quad_angular);

  double mean_f = 0.0, f_sq = 0.0;
  for (std::size_t i = 0; i < vol.size(); ++i) {
    const double fv = f.eval(vol.points[i]);
    mean_f += vol.weights[i] * fv;
    f_sq += vol.weights[i] * fv * fv;
  }
  const double f_l2 = std::sqrt(f_sq);
  if (std::abs(mean_f) > opts.mean_tol * std::max(1.0, f_l2)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "int_Omega f = %.9e must vanish", mean_f);
    fail(ErrorKind::NonzeroMean, buf);
  }

  MfsOptions popts = opts.poisson;
  popts.threads = opts.threads;
  PoissonSolution phi = solve_poisson(domain, f, popts);

  const double flux = check_compatibility(domain, phi, opts.boundary_points);

  StokesOptions sopts = opts.stokes;
  sopts.threads = opts.threads;
  const PoissonSolution& phi_ref = phi;
  StokesSolution st =
      solve_stokes_bvp(domain, [&phi_ref](Vec2 p) { return phi_ref.grad(p); }, sopts);

  DivergenceSolution sol(domain, f, std::move(phi), std::move(st));
  ResidualSummary& rs = sol.residuals();
  rs.mean_f = mean_f;
  rs.flux = flux;
  rs.f_l2 = f_l2;
  rs.poisson_boundary_residual = sol.phi().boundary_residual_max;
  rs.stokes_boundary_residual = sol.stokes().boundary_residual_max;

  // div u - f over the volume rule, via first-order jets.
  std::vector<double> divres(vol.size());
  parallel_blocks(vol.size(), 16, opts.threads, [&](std::size_t lo, std::size_t hi, std::size_t) {
    for (std::size_t i = lo; i < hi; ++i) {
      const auto uj = sol.u_jet(vol.points[i], 1);
      divres[i] = uj[0].derivative(1, 0) + uj[1].derivative(0, 1) - f.eval(vol.points[i]);
    }
  });
  rs.div_residual_l2 = l2_norm(divres, vol);
  rs.div_residual_rel = (f_l2 > 0.0) ? rs.div_residual_l2 / f_l2 : rs.div_residual_l2;

  const QuadratureSet bnd = domain.boundary_trace(opts.boundary_points);
  double umax = 0.0;
  for (const Vec2& p : bnd.points) {
    const Vec2 up = sol.u(p);
    umax = std::max({umax, std::abs(up.x), std::abs(up.y)});
  }
  rs.boundary_max = umax;

  const double scale = std::max(1.0, std::max(f_l2, sol.stokes().data_scale));
  rs.div_ok = rs.div_residual_rel <= opts.div_tol;
  rs.boundary_ok = rs.boundary_max <= opts.boundary_tol * scale;
  return sol;
}

std::array<Polynomial, 2> nonuniqueness_witness(const AnalyticDomain& domain) {
  const Polynomial rho_sq = domain.rho() * domain.rho();
  return {-rho_sq.dy(), rho_sq.dx()};
}

const DerivativeTable& FullReport::table(const std::string& subject) const {
  for (const auto& t : tables)
    if (t.subject() == subject) return t;
  fail(ErrorKind::TruncationTooSmall, "no table for subject '" + subject + "'");
}

bool FullReport::has_table(const std::string& subject) const {
  for (const auto& t : tables)
    if (t.subject() == subject) return true;
  return false;
}

namespace {

// Manufactured H2-regularity cases; all polynomial, so their small tables
// are exact up to quadrature.
struct H2Case {
  std::string name;
  std::vector<Polynomial> v;
  std::vector<Polynomial> q;
  std::vector<Polynomial> g;  // -Lap v + grad q
};

std::vector<H2Case> h2_cases(const AnalyticDomain& domain) {
  std::vector<H2Case> cases;
  const Polynomial zero(0.0);
  {
    // Rigid rotation: v = (y, -x), q = 0, g = 0.
    H2Case c;
    c.name = "rot";
    c.v = {Polynomial::coordinate(1), -Polynomial::coordinate(0)};
    c.q = {zero};
    c.g = {zero, zero};
    cases.push_back(std::move(c));
  }
  {
    // Zero velocity, constant pressure.
    H2Case c;
    c.name = "constq";
    c.v = {zero, zero};
    c.q = {Polynomial(1.0)};
    c.g = {zero, zero};
    cases.push_back(std::move(c));
  }
  {
    // Stream-function field J grad(rho^2): divergence-free, zero trace.
    H2Case c;
    c.name = "stream";
    const auto u0 = nonuniqueness_witness(domain);
    c.v = {u0[0], u0[1]};
    c.q = {zero};
    c.g = {-u0[0].laplacian(), -u0[1].laplacian()};
    cases.push_back(std::move(c));
  }
  return cases;
}

}  // namespace

FullReport full_report(const AnalyticDomain& domain, const Polynomial& f,
                       const PipelineOptions& popts, const ReportOptions& ropts) {
  FullReport out;
  DivergenceSolution sol = solve_divergence(domain, f, popts);
  out.residuals = sol.residuals();

  const KomatsuFamily family = KomatsuFamily::build(domain);
  const QuadratureSet quad = domain.volume_quadrature(ropts.table_radial, ropts.table_angular);

  const int m = ropts.m_total;
  TableOptions rect{m, m, {1, 2, 3}, ropts.threads};
  TableOptions comm_opts{ropts.sweep_i, ropts.sweep_j, {1, 2, 3}, ropts.threads};

  out.tables.push_back(build_table("v", sol.v_subject(), family, quad, rect));
  out.tables.push_back(build_table("q", sol.q_subject(), family, quad, rect));
  out.tables.push_back(build_table("f", sol.f_subject(), family, quad, rect));
  out.tables.push_back(build_commutator_table("comm_lap_v", CommutatorKind::Laplacian,
                                              sol.v_subject(), family, quad, comm_opts));
  out.tables.push_back(build_commutator_table("comm_grad_q", CommutatorKind::Gradient,
                                              sol.q_subject(), family, quad, comm_opts));
  if (ropts.want_tables || ropts.want_certify) {
    out.tables.push_back(build_table("u", sol.u_subject(), family, quad, rect));
    out.tables.push_back(build_table("grad_phi", sol.grad_phi_subject(), family, quad, rect));
  }

  const DerivativeTable& tv = out.table("v");
  const DerivativeTable& tq = out.table("q");
  const DerivativeTable& tf = out.table("f");
  const DerivativeTable& tcv = out.table("comm_lap_v");
  const DerivativeTable& tcq = out.table("comm_grad_q");

  if (ropts.want_lemmas) {
    for (int i = 2; i <= ropts.sweep_i; ++i)
      for (int j = 0; j <= ropts.sweep_j; ++j)
        out.lemma_reports.push_back(
            check_normal_reduction(tv, tq, tcv, tcq, tf, i, j, "pipeline"));
    for (int j = 1; j <= ropts.sweep_j; ++j)
      out.lemma_reports.push_back(check_normal_reduction(tv, tq, tcv, tcq, tf, 1, j, "pipeline"));
    for (int j = 2; j <= ropts.sweep_j; ++j)
      out.lemma_reports.push_back(check_tangential_reduction(tv, tq, tcv, tcq, tf, j, "pipeline"));
    for (int j = 1; j <= ropts.sweep_j; ++j) {
      out.lemma_reports.push_back(check_leibniz(LeibnizKind::Laplacian, tcv, tv, 0, j, "pipeline"));
      out.lemma_reports.push_back(check_leibniz(LeibnizKind::Gradient, tcq, tq, 0, j, "pipeline"));
      for (int i = 1; i <= ropts.sweep_i; ++i) {
        out.lemma_reports.push_back(
            check_leibniz(LeibnizKind::Laplacian, tcv, tv, i, j, "pipeline"));
        out.lemma_reports.push_back(check_leibniz(LeibnizKind::Gradient, tcq, tq, i, j, "pipeline"));
      }
    }
    // Manufactured H2 cases with their own small exact tables.
    const TableOptions h2v{2, 1, {1, 2, 3}, ropts.threads};
    const TableOptions h2q{1, 0, {1, 2, 3}, ropts.threads};
    const TableOptions h2g{0, 0, {1, 2, 3}, ropts.threads};
    for (const auto& c : h2_cases(domain)) {
      DerivativeTable cv = build_table("h2_" + c.name + "_v", polynomial_subject(c.v), family,
                                       quad, h2v);
      DerivativeTable cq = build_table("h2_" + c.name + "_q", polynomial_subject(c.q), family,
                                       quad, h2q);
      DerivativeTable cg = build_table("h2_" + c.name + "_g", polynomial_subject(c.g), family,
                                       quad, h2g);
      out.lemma_reports.push_back(check_h2_stokes(cv, cq, cg, c.name));
      out.tables.push_back(std::move(cv));
      out.tables.push_back(std::move(cq));
      out.tables.push_back(std::move(cg));
    }
    out.fitted = fit_constants(out.lemma_reports);
  }

  NormWeights w = ropts.weights;
  w.m_total = m;
  out.rho_f = rho_norm(tf, w);
  out.psi = psi_norm(tv, tq, w);
  if (out.has_table("u")) {
    out.rho_u = rho_norm(out.table("u"), w);
    out.rho_grad_phi = rho_norm(out.table("grad_phi"), w);
    out.ratio_u_over_f = (out.rho_f.total > 0.0) ? out.rho_u.total / out.rho_f.total : 0.0;
  }

  if (ropts.want_certify && out.has_table("u")) {
    CertifyOptions copts = ropts.certify;
    copts.m_total = m;
    copts.fitted_product = (out.fitted.c_star + 1.0) * (out.fitted.k_star + 1.0);
    if (!ropts.want_lemmas) copts.fitted_product = 1.0;
    out.certify_u = certify_radius(out.table("u"), copts);
  }

  if (ropts.want_bootstrap) {
    out.bootstrap = check_bootstrap(tv, tq, tf, ropts.bootstrap_eps2, ropts.tie_ratio,
                                    out.fitted.c_star, out.fitted.k_star, m);
  }
  return out;
}

}  // namespace divlab
