#include "divlab/poisson.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "divlab/errors.hpp"
#include "divlab/kernels.hpp"
#include "divlab/parallel.hpp"

namespace divlab {

namespace {

// Neumann series for one antiderivative direction: with G the double
// antiderivative along `axis` and D2 the second derivative along the other
// axis, phi = -sum_m (-1)^m (G D2)^m G f satisfies Lap(phi) = -f; the series
// terminates because D2 strictly lowers the other-axis degree.
Polynomial particular_series(const Polynomial& f, int axis) {
  Polynomial phi;
  Polynomial cur = f;
  double sign = -1.0;
  while (!cur.is_zero(0.0)) {
    const Polynomial psi = cur.double_antiderivative(axis);
    phi += psi * sign;
    sign = -sign;
    cur = (axis == 0) ? psi.dy().dy() : psi.dx().dx();
    cur = cur.trimmed();
  }
  return phi;
}

}  // namespace

Polynomial poly_particular(const Polynomial& f) {
  if (f.degree() > 20) fail(ErrorKind::DegreeCap, "source degree above 20");
  // Split monomials by dominant exponent so x<->y symmetry is preserved.
  std::vector<std::array<double, 3>> fx_terms, fy_terms;
  for (int k = 0; k <= f.degree(); ++k)
    for (int b = 0; b <= k; ++b) {
      const int a = k - b;
      const double c = f.coeff(a, b);
      if (c == 0.0) continue;
      const double da = static_cast<double>(a), db = static_cast<double>(b);
      if (a > b)
        fx_terms.push_back({da, db, c});
      else if (b > a)
        fy_terms.push_back({da, db, c});
      else {
        fx_terms.push_back({da, db, 0.5 * c});
        fy_terms.push_back({da, db, 0.5 * c});
      }
    }
  Polynomial phi = particular_series(Polynomial::from_terms(fx_terms), 0) +
                   particular_series(Polynomial::from_terms(fy_terms), 1);
  // The construction is exact; guard against any degenerate arithmetic.
  const Polynomial resid = phi.laplacian() + f;
  const double scale = std::max(1.0, f.max_abs_coeff());
  if (!resid.is_zero(1e-10 * scale))
    fail(ErrorKind::DegreeCap, "particular solution identity failed to close");
  return phi.trimmed();
}

MfsFit mfs_harmonic_fit(const AnalyticDomain& domain,
                        const std::function<double(Vec2)>& boundary_values,
                        const MfsOptions& opts) {
  const int n_c = opts.n_charges;
  const int n_b = opts.collocation_ratio * n_c;
  const QuadratureSet trace = domain.boundary_trace(n_b);

  MfsFit fit;
  fit.sources.resize(n_c);
  const double radius = opts.radius_factor * domain.circumscribed_radius();
  for (int i = 0; i < n_c; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n_c;
    fit.sources[i] = domain.center() + Vec2{std::cos(t), std::sin(t)} * radius;
  }

  Eigen::MatrixXd a(n_b, n_c);
  Eigen::VectorXd g(n_b);
  parallel_blocks(n_b, 16, opts.threads, [&](std::size_t lo, std::size_t hi, std::size_t) {
    for (std::size_t p = lo; p < hi; ++p) {
      const Vec2 x = trace.points[p];
      for (int s = 0; s < n_c; ++s)
        a(static_cast<long>(p), s) = 0.5 * std::log((x - fit.sources[s]).norm2());
      g(static_cast<long>(p)) = boundary_values(x);
    }
  });

  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(opts.svd_cutoff);
  const Eigen::VectorXd w = svd.solve(g);
  fit.weights.assign(w.data(), w.data() + n_c);

  const Eigen::VectorXd resid = a * w - g;
  fit.data_scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  fit.residual_max = resid.cwiseAbs().maxCoeff();
  double l2 = 0.0;
  for (int p = 0; p < n_b; ++p) l2 += trace.weights[p] * resid(p) * resid(p);
  fit.residual_l2 = std::sqrt(l2);
  if (fit.residual_max > opts.residual_tol * fit.data_scale)
    fail(ErrorKind::IllConditioned,
         "harmonic fit residual " + std::to_string(fit.residual_max) + " above tolerance");
  return fit;
}

Jet PoissonSolution::jet(Vec2 p, int order) const {
  Jet out = taylor_jet(particular, p, order);
  for (std::size_t i = 0; i < charges.size(); ++i)
    out += log_charge_jet(charges[i], p, order) * charge_weights[i];
  return out;
}

std::array<Jet, 2> PoissonSolution::grad_jet(Vec2 p, int order) const {
  const Jet phi = jet(p, order + 1);
  return {phi.dx(), phi.dy()};
}

double PoissonSolution::value(Vec2 p) const {
  double v = particular.eval(p);
  for (std::size_t i = 0; i < charges.size(); ++i)
    v += charge_weights[i] * 0.5 * std::log((p - charges[i]).norm2());
  return v;
}

Vec2 PoissonSolution::grad(Vec2 p) const {
  Vec2 g{particular.dx().eval(p), particular.dy().eval(p)};
  for (std::size_t i = 0; i < charges.size(); ++i) {
    const Vec2 r = p - charges[i];
    g = g + r * (charge_weights[i] / r.norm2());
  }
  return g;
}

PoissonSolution solve_poisson(const AnalyticDomain& domain, const Polynomial& f,
                              const MfsOptions& opts) {
  const AnalyticDomain prime = domain.enlarged();
  PoissonSolution sol;
  sol.particular = poly_particular(f);
  const Polynomial& phi_p = sol.particular;
  const MfsFit fit = mfs_harmonic_fit(
      prime, [&](Vec2 x) { return -phi_p.eval(x); }, opts);
  sol.charges = fit.sources;
  sol.charge_weights = fit.weights;

  // Residual audited on a 4x denser boundary set than the collocation grid.
  const QuadratureSet dense = prime.boundary_trace(4 * opts.collocation_ratio * opts.n_charges);
  double rmax = 0.0, rl2 = 0.0;
  for (std::size_t i = 0; i < dense.points.size(); ++i) {
    const double r = sol.value(dense.points[i]);
    rmax = std::max(rmax, std::abs(r));
    rl2 += dense.weights[i] * r * r;
  }
  sol.boundary_residual_max = rmax;
  sol.boundary_residual_l2 = std::sqrt(rl2);
  return sol;
}

}  // namespace divlab
