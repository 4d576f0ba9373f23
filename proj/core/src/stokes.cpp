#include "divlab/stokes.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "divlab/errors.hpp"
#include "divlab/kernels.hpp"
#include "divlab/parallel.hpp"

namespace divlab {

namespace {

// Pointwise Stokeslet values, same normalization as kernels.hpp.
inline void stokeslet_values(Vec2 x, Vec2 s, double g[2][2], double p[2]) {
  const Vec2 r = x - s;
  const double r2 = r.norm2();
  const double lg = 0.5 * std::log(r2);
  g[0][0] = -lg + r.x * r.x / r2;
  g[0][1] = r.x * r.y / r2;
  g[1][0] = g[0][1];
  g[1][1] = -lg + r.y * r.y / r2;
  p[0] = 2.0 * r.x / r2;
  p[1] = 2.0 * r.y / r2;
}

}  // namespace

double boundary_flux(const AnalyticDomain& domain, const std::function<Vec2(Vec2)>& field,
                     int n_boundary) {
  const QuadratureSet trace = domain.boundary_trace(n_boundary);
  double flux = 0.0;
  for (std::size_t i = 0; i < trace.points.size(); ++i) {
    const Vec2 p = trace.points[i];
    Vec2 grad{domain.rho_dx().eval(p), domain.rho_dy().eval(p)};
    const Vec2 n = -grad * (1.0 / grad.norm());  // outward
    flux += trace.weights[i] * field(p).dot(n);
  }
  return flux;
}

double check_compatibility(const AnalyticDomain& domain, const PoissonSolution& phi,
                           int n_boundary) {
  return boundary_flux(domain, [&](Vec2 p) { return phi.grad(p); }, n_boundary);
}

std::array<Jet, 3> StokesSolution::evaluate_jets(Vec2 p, int order) const {
  Jet v1(p, order), v2(p, order), q(p, order);
  for (std::size_t s = 0; s < sources.size(); ++s) {
    const Vec2 src = sources[s];
    const Vec2 r = p - src;
    const double r2 = r.norm2();
    if (r2 < 1e-24) fail(ErrorKind::SourceTargetCoincide, "evaluation point at a source");
    // Shared atoms per source.
    Jet rsq(p, order);
    rsq.at(0, 0) = r2;
    if (order >= 1) {
      rsq.at(1, 0) = 2.0 * r.x;
      rsq.at(0, 1) = 2.0 * r.y;
    }
    if (order >= 2) {
      rsq.at(2, 0) = 1.0;
      rsq.at(0, 2) = 1.0;
    }
    const Jet lg = compose_series(log_series(r2, order), rsq) * 0.5;
    const Jet inv = compose_series(recip_series(r2, order), rsq);
    Jet rx(p, order), ry(p, order);
    rx.at(0, 0) = r.x;
    ry.at(0, 0) = r.y;
    if (order >= 1) {
      rx.at(1, 0) = 1.0;
      ry.at(0, 1) = 1.0;
    }
    const Jet rx_inv = rx * inv;
    const Jet ry_inv = ry * inv;
    const double w1 = weights[s].x, w2 = weights[s].y;
    // v_i = sum_j G_ij w_j with G_ij = -delta_ij lg + r_i r_j / r^2.
    v1 += (rx_inv * rx) * w1 + (rx_inv * ry) * w2 - lg * w1;
    v2 += (ry_inv * rx) * w1 + (ry_inv * ry) * w2 - lg * w2;
    q += (rx_inv * w1 + ry_inv * w2) * 2.0;
  }
  q.at(0, 0) -= pressure_gauge;
  return {v1, v2, q};
}

Jet StokesSolution::velocity_jet(int component, Vec2 p, int order) const {
  return evaluate_jets(p, order)[component - 1];
}

Jet StokesSolution::pressure_jet(Vec2 p, int order) const { return evaluate_jets(p, order)[2]; }

Vec2 StokesSolution::velocity(Vec2 p) const {
  double g[2][2], pr[2];
  Vec2 v{0.0, 0.0};
  for (std::size_t s = 0; s < sources.size(); ++s) {
    stokeslet_values(p, sources[s], g, pr);
    v.x += g[0][0] * weights[s].x + g[0][1] * weights[s].y;
    v.y += g[1][0] * weights[s].x + g[1][1] * weights[s].y;
  }
  return v;
}

double StokesSolution::pressure(Vec2 p) const {
  double g[2][2], pr[2];
  double q = -pressure_gauge;
  for (std::size_t s = 0; s < sources.size(); ++s) {
    stokeslet_values(p, sources[s], g, pr);
    q += pr[0] * weights[s].x + pr[1] * weights[s].y;
  }
  return q;
}

StokesSolution solve_stokes_bvp(const AnalyticDomain& domain,
                                const std::function<Vec2(Vec2)>& boundary_data,
                                const StokesOptions& opts) {
  const int n_s = opts.n_sources;
  const int n_b = opts.collocation_ratio * n_s;
  const QuadratureSet trace = domain.boundary_trace(n_b);

  double data_scale = 0.0;
  std::vector<Vec2> data(trace.points.size());
  for (std::size_t i = 0; i < trace.points.size(); ++i) {
    data[i] = boundary_data(trace.points[i]);
    data_scale = std::max({data_scale, std::abs(data[i].x), std::abs(data[i].y)});
  }
  const double scale = std::max(1.0, data_scale);

  const double flux = boundary_flux(domain, boundary_data, n_b);
  if (std::abs(flux) > opts.flux_tol * scale)
    fail(ErrorKind::IncompatibleFlux,
         "boundary data has nonzero flux " + std::to_string(flux));

  StokesSolution sol;
  sol.data_scale = data_scale;
  sol.sources.resize(n_s);
  const double radius = opts.radius_factor * domain.circumscribed_radius();
  for (int i = 0; i < n_s; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n_s;
    sol.sources[i] = domain.center() + Vec2{std::cos(t), std::sin(t)} * radius;
  }

  Eigen::MatrixXd a(2 * n_b, 2 * n_s);
  Eigen::VectorXd g(2 * n_b);
  parallel_blocks(n_b, 16, opts.threads, [&](std::size_t lo, std::size_t hi, std::size_t) {
    double gv[2][2], pv[2];
    for (std::size_t p = lo; p < hi; ++p) {
      for (int s = 0; s < n_s; ++s) {
        stokeslet_values(trace.points[p], sol.sources[s], gv, pv);
        a(2 * static_cast<long>(p), 2 * s) = gv[0][0];
        a(2 * static_cast<long>(p), 2 * s + 1) = gv[0][1];
        a(2 * static_cast<long>(p) + 1, 2 * s) = gv[1][0];
        a(2 * static_cast<long>(p) + 1, 2 * s + 1) = gv[1][1];
      }
      g(2 * static_cast<long>(p)) = data[p].x;
      g(2 * static_cast<long>(p) + 1) = data[p].y;
    }
  });

  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(opts.svd_cutoff);
  const Eigen::VectorXd w = svd.solve(g);
  sol.weights.resize(n_s);
  for (int s = 0; s < n_s; ++s) sol.weights[s] = {w(2 * s), w(2 * s + 1)};

  // Zero-mean pressure gauge over the volume rule.
  const QuadratureSet vol = domain.volume_quadrature(opts.gauge_radial, opts.gauge_angular);
  double q_int = 0.0, area = 0.0;
  for (std::size_t i = 0; i < vol.points.size(); ++i) {
    q_int += vol.weights[i] * sol.pressure(vol.points[i]);
    area += vol.weights[i];
  }
  sol.pressure_gauge = q_int / area;

  // Residual audited on a 4x denser boundary.
  const QuadratureSet dense = domain.boundary_trace(4 * n_b);
  double rmax = 0.0, rl2 = 0.0;
  for (std::size_t i = 0; i < dense.points.size(); ++i) {
    const Vec2 r = sol.velocity(dense.points[i]) - boundary_data(dense.points[i]);
    const double rn = std::max(std::abs(r.x), std::abs(r.y));
    rmax = std::max(rmax, rn);
    rl2 += dense.weights[i] * (r.x * r.x + r.y * r.y);
  }
  sol.boundary_residual_max = rmax;
  sol.boundary_residual_l2 = std::sqrt(rl2);
  if (rmax > opts.residual_tol * scale)
    fail(ErrorKind::IllConditioned,
         "stokes boundary residual " + std::to_string(rmax) + " above tolerance");
  return sol;
}

}  // namespace divlab
