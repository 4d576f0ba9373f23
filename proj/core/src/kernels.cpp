#include "divlab/kernels.hpp"

#include "divlab/errors.hpp"

namespace divlab {

namespace {

constexpr double kMinSeparation2 = 1e-24;

// Jet of |x - s|^2 at the target: a degree-2 polynomial, exact at any order.
Jet rsq_jet(Vec2 source, Vec2 target, int order) {
  const Vec2 r = target - source;
  if (r.norm2() < kMinSeparation2)
    fail(ErrorKind::SourceTargetCoincide, "kernel evaluated at its source");
  Jet j(target, order);
  j.at(0, 0) = r.norm2();
  if (order >= 1) {
    j.at(1, 0) = 2.0 * r.x;
    j.at(0, 1) = 2.0 * r.y;
  }
  if (order >= 2) {
    j.at(2, 0) = 1.0;
    j.at(0, 2) = 1.0;
  }
  return j;
}

// Jet of the i-th component of x - s (a linear polynomial).
Jet r_component_jet(int i, Vec2 source, Vec2 target, int order) {
  const Vec2 r = target - source;
  Jet j(target, order);
  j.at(0, 0) = (i == 1) ? r.x : r.y;
  if (order >= 1) {
    if (i == 1)
      j.at(1, 0) = 1.0;
    else
      j.at(0, 1) = 1.0;
  }
  return j;
}

}  // namespace

Jet log_charge_jet(Vec2 source, Vec2 target, int order) {
  const Jet rsq = rsq_jet(source, target, order);
  return compose_series(log_series(rsq.value(), order), rsq) * 0.5;
}

Jet stokeslet_velocity_jet(int i, int j, Vec2 source, Vec2 target, int order) {
  const Jet rsq = rsq_jet(source, target, order);
  const Jet inv = compose_series(recip_series(rsq.value(), order), rsq);
  Jet out = r_component_jet(i, source, target, order) *
            r_component_jet(j, source, target, order) * inv;
  if (i == j) out -= compose_series(log_series(rsq.value(), order), rsq) * 0.5;
  return out;
}

Jet stokeslet_pressure_jet(int j, Vec2 source, Vec2 target, int order) {
  const Jet rsq = rsq_jet(source, target, order);
  const Jet inv = compose_series(recip_series(rsq.value(), order), rsq);
  return r_component_jet(j, source, target, order) * inv * 2.0;
}

Jet kernel_jet(KernelId id, Vec2 source, Vec2 target, int order) {
  switch (id.kind) {
    case KernelId::LogCharge: return log_charge_jet(source, target, order);
    case KernelId::StokesletVelocity: return stokeslet_velocity_jet(id.i, id.j, source, target, order);
    case KernelId::StokesletPressure: return stokeslet_pressure_jet(id.j, source, target, order);
  }
  fail(ErrorKind::OrderExhausted, "unreachable kernel id");
}

}  // namespace divlab
