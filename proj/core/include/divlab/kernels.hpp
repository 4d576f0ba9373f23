#pragma once

#include "divlab/jet.hpp"
#include "divlab/vec2.hpp"

namespace divlab {

/// Closed-form source kernels, expanded as jets in the field variable.
///
/// Normalizations (r = x - s):
///   log charge      Phi(x)    = log|r|
///   Stokeslet       G_ij(x,s) = -delta_ij log|r| + r_i r_j / |r|^2
///   pressure        P_j(x,s)  = 2 r_j / |r|^2
/// With these choices -Lap G_{.j} + grad P_j = 0 and div_x G_{.j} = 0 hold
/// identically away from the source, with no prefactor; fitted weights
/// absorb all constants.

/// Jet at `target` of x -> log|x - source|.
Jet log_charge_jet(Vec2 source, Vec2 target, int order);

/// Jet at `target` of x -> G_ij(x, source); i, j in {1, 2}.
Jet stokeslet_velocity_jet(int i, int j, Vec2 source, Vec2 target, int order);

/// Jet at `target` of x -> P_j(x, source); j in {1, 2}.
Jet stokeslet_pressure_jet(int j, Vec2 source, Vec2 target, int order);

struct KernelId {
  enum Kind { LogCharge, StokesletVelocity, StokesletPressure } kind = LogCharge;
  int i = 1;
  int j = 1;
};

Jet kernel_jet(KernelId id, Vec2 source, Vec2 target, int order);

}  // namespace divlab
