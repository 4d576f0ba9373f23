#pragma once

#include <array>
#include <functional>
#include <vector>

#include "divlab/domain.hpp"
#include "divlab/jet.hpp"
#include "divlab/poisson.hpp"

namespace divlab {

struct StokesOptions {
  int n_sources = 96;
  int collocation_ratio = 2;
  double radius_factor = 1.5;
  double svd_cutoff = 1e-13;
  double residual_tol = 1e-6;
  /// Max admissible |boundary flux| relative to the data scale.
  double flux_tol = 1e-8;
  /// Volume rule used to fix the zero-mean pressure gauge.
  int gauge_radial = 16;
  int gauge_angular = 32;
  int threads = 0;
};

/// Stokeslet representation of the homogeneous Stokes system: velocity
/// v_i(x) = sum_s G_ij(x, s) w_{s,j} and pressure q(x) = sum_s P_j(x, s)
/// w_{s,j} - gauge, with sources strictly outside the closed domain. The
/// interior equations -Lap v + grad q = 0 and div v = 0 are kernel
/// identities; only the boundary condition carries approximation error.
struct StokesSolution {
  std::vector<Vec2> sources;
  std::vector<Vec2> weights;
  double pressure_gauge = 0.0;
  double boundary_residual_max = 0.0;
  double boundary_residual_l2 = 0.0;
  double data_scale = 0.0;

  /// Jets of (v1, v2, q) at a point; shares per-source work across the
  /// three components.
  std::array<Jet, 3> evaluate_jets(Vec2 p, int order) const;
  Jet velocity_jet(int component, Vec2 p, int order) const;
  Jet pressure_jet(Vec2 p, int order) const;
  Vec2 velocity(Vec2 p) const;
  double pressure(Vec2 p) const;
};

/// Boundary flux of a vector field through the traced boundary (outward
/// normal -grad rho / |grad rho|).
double boundary_flux(const AnalyticDomain& domain, const std::function<Vec2(Vec2)>& field,
                     int n_boundary = 256);

/// Flux of grad(phi) through the boundary of the base domain; equals
/// -int_Omega f when phi solves the enlarged-domain problem, so it must
/// vanish for compatible data.
double check_compatibility(const AnalyticDomain& domain, const PoissonSolution& phi,
                           int n_boundary = 256);

StokesSolution solve_stokes_bvp(const AnalyticDomain& domain,
                                const std::function<Vec2(Vec2)>& boundary_data,
                                const StokesOptions& opts = {});

}  // namespace divlab
