#pragma once

#include <span>
#include <string>
#include <vector>

#include "divlab/polynomial.hpp"
#include "divlab/vec2.hpp"

namespace divlab {

enum class QuadratureKind { Volume, Boundary };

struct QuadratureSet {
  std::vector<Vec2> points;
  std::vector<double> weights;
  QuadratureKind kind = QuadratureKind::Volume;

  std::size_t size() const { return points.size(); }
  double weight_sum() const;
};

/// Weighted L2 norm of sampled values: sqrt(sum_i w_i v_i^2).
double l2_norm(std::span<const double> values, const QuadratureSet& quad);

/// Star-shaped analytic domain given by a polynomial defining function rho:
/// rho > 0 inside, rho = 0 on the boundary, |grad rho| > 0 on the boundary,
/// and every ray from the center crosses the boundary exactly once.
class AnalyticDomain {
 public:
  static AnalyticDomain disk();
  static AnalyticDomain ellipse(double a, double b);
  static AnalyticDomain perturbed_disk(double amplitude, int frequency);
  static AnalyticDomain from_polynomial(Polynomial rho, Vec2 center,
                                        double enlargement_scale = 1.2);
  /// Named spec: "disk", "ellipse", "perturbed_disk", "polynomial".
  static AnalyticDomain make(const std::string& kind, std::span<const double> params,
                             const Polynomial* coeffs = nullptr, Vec2 center = {},
                             double enlargement_scale = 1.2);

  const Polynomial& rho() const { return rho_; }
  const Polynomial& rho_dx() const { return rho_dx_; }
  const Polynomial& rho_dy() const { return rho_dy_; }
  Vec2 center() const { return center_; }
  double enlargement_scale() const { return scale_; }

  /// Estimated max / min distance from center to the traced boundary.
  double circumscribed_radius() const { return r_max_; }
  double inradius() const { return r_min_; }
  /// Collar width delta_0 (diagnostics only): 0.1 * inradius estimate.
  double collar_width() const { return 0.1 * r_min_; }

  /// The enlarged domain Omega' = s . Omega (dilation about the center).
  AnalyticDomain enlarged() const;

  /// Root of rho along the ray center + r (cos t, sin t), r > 0.
  double boundary_radius(double theta) const;

  /// n equi-angular boundary points with spectral arclength weights.
  QuadratureSet boundary_trace(int n) const;

  /// Tensor rule: Gauss-Legendre along each ray times equi-angular sectors,
  /// with the polar Jacobian r dr dtheta.
  QuadratureSet volume_quadrature(int n_radial, int n_angular) const;

  bool contains(Vec2 p) const { return rho_.eval(p) > 0.0; }

 private:
  AnalyticDomain(Polynomial rho, Vec2 center, double scale);
  void validate();

  Polynomial rho_, rho_dx_, rho_dy_;
  Vec2 center_;
  double scale_;
  double r_max_ = 0.0, r_min_ = 0.0;
};

/// Gauss-Legendre nodes/weights on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace divlab
