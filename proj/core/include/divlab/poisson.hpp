#pragma once

#include <array>
#include <functional>
#include <vector>

#include "divlab/domain.hpp"
#include "divlab/jet.hpp"
#include "divlab/polynomial.hpp"

namespace divlab {

struct MfsOptions {
  int n_charges = 96;
  /// Collocation points per charge (the system is overdetermined 2:1).
  int collocation_ratio = 2;
  /// Charge circle radius as a multiple of the circumscribed radius.
  double radius_factor = 1.5;
  /// Relative truncation cutoff for the SVD solve.
  double svd_cutoff = 1e-13;
  /// Max boundary residual accepted after the solve (relative to data scale).
  double residual_tol = 1e-6;
  int threads = 0;
};

struct MfsFit {
  std::vector<Vec2> sources;
  std::vector<double> weights;
  double residual_max = 0.0;
  double residual_l2 = 0.0;
  /// Scale of the boundary data used for the relative residual.
  double data_scale = 0.0;
};

/// Least-squares fit of sum_i w_i log|x - s_i| to boundary values on the
/// domain's traced boundary, charges outside the domain.
MfsFit mfs_harmonic_fit(const AnalyticDomain& domain,
                        const std::function<double(Vec2)>& boundary_values,
                        const MfsOptions& opts = {});

/// Solution of -Lap(phi) = f on the enlarged domain with phi = 0 on its
/// boundary: an exact polynomial particular part plus a harmonic MFS
/// correction with charges outside the enlarged domain.
struct PoissonSolution {
  Polynomial particular;
  std::vector<Vec2> charges;
  std::vector<double> charge_weights;
  double boundary_residual_max = 0.0;
  double boundary_residual_l2 = 0.0;

  Jet jet(Vec2 p, int order) const;
  std::array<Jet, 2> grad_jet(Vec2 p, int order) const;
  double value(Vec2 p) const;
  Vec2 grad(Vec2 p) const;
};

/// Exact polynomial phi_p with Lap(phi_p) = -f. The antiderivative runs in
/// the variable with the larger exponent (split evenly on ties), which keeps
/// x<->y symmetric inputs symmetric. Degrees above 20 are rejected.
Polynomial poly_particular(const Polynomial& f);

PoissonSolution solve_poisson(const AnalyticDomain& domain, const Polynomial& f,
                              const MfsOptions& opts = {});

}  // namespace divlab
