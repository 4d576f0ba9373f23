#include "divlab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "divlab/errors.hpp"

namespace divlab {

namespace {

constexpr double kGradThreshold = 1e-6;
constexpr int kValidationRays = 256;
constexpr int kRayScanSamples = 512;

// Derivative of periodic samples at the sample points, by direct Fourier
// synthesis. n is small here (<= a few thousand), so O(n^2) is fine and
// keeps the dependency surface empty.
std::vector<double> trig_derivative(const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  const double two_pi = 2.0 * std::numbers::pi;
  const int kmax = (n - 1) / 2;
  std::vector<double> a(kmax + 1, 0.0), b(kmax + 1, 0.0);
  for (int k = 1; k <= kmax; ++k) {
    double ca = 0.0, cb = 0.0;
    for (int j = 0; j < n; ++j) {
      const double t = two_pi * k * j / n;
      ca += f[j] * std::cos(t);
      cb += f[j] * std::sin(t);
    }
    a[k] = 2.0 * ca / n;
    b[k] = 2.0 * cb / n;
  }
  // The even-n Nyquist cosine mode has zero derivative at the nodes of its
  // sampled sine partner; it is dropped, as usual for trigonometric
  // differentiation on an even grid.
  std::vector<double> df(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int k = 1; k <= kmax; ++k) {
      const double t = two_pi * k * j / n;
      s += k * (-a[k] * std::sin(t) + b[k] * std::cos(t));
    }
    df[j] = s;
  }
  return df;
}

}  // namespace

double QuadratureSet::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double l2_norm(std::span<const double> values, const QuadratureSet& quad) {
  if (quad.points.empty()) fail(ErrorKind::LengthMismatch, "empty quadrature");
  if (values.size() != quad.points.size())
    fail(ErrorKind::LengthMismatch, "value count does not match quadrature size");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += quad.weights[i] * values[i] * values[i];
  return std::sqrt(std::max(0.0, s));
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration on P_n over [-1, 1], then map to [0, 1].
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * pp * pp);
  }
}

AnalyticDomain::AnalyticDomain(Polynomial rho, Vec2 center, double scale)
    : rho_(std::move(rho)), rho_dx_(rho_.dx()), rho_dy_(rho_.dy()), center_(center), scale_(scale) {}

AnalyticDomain AnalyticDomain::disk() {
  // rho = (1 - x^2 - y^2)/2
  return from_polynomial(
      Polynomial::from_terms({{0, 0, 0.5}, {2, 0, -0.5}, {0, 2, -0.5}}), {0.0, 0.0});
}

AnalyticDomain AnalyticDomain::ellipse(double a, double b) {
  return from_polynomial(Polynomial::from_terms({{0, 0, 0.5},
                                                 {2, 0, -0.5 / (a * a)},
                                                 {0, 2, -0.5 / (b * b)}}),
                         {0.0, 0.0});
}

AnalyticDomain AnalyticDomain::perturbed_disk(double amplitude, int frequency) {
  Polynomial rho = Polynomial::from_terms({{0, 0, 1.0}, {2, 0, -1.0}, {0, 2, -1.0}});
  rho += Polynomial::harmonic_re(frequency) * amplitude;
  return from_polynomial(std::move(rho), {0.0, 0.0});
}

AnalyticDomain AnalyticDomain::from_polynomial(Polynomial rho, Vec2 center,
                                               double enlargement_scale) {
  AnalyticDomain d(std::move(rho), center, enlargement_scale);
  d.validate();
  return d;
}

AnalyticDomain AnalyticDomain::make(const std::string& kind, std::span<const double> params,
                                    const Polynomial* coeffs, Vec2 center,
                                    double enlargement_scale) {
  if (kind == "disk") {
    AnalyticDomain d = disk();
    d.scale_ = enlargement_scale;
    return d;
  }
  if (kind == "ellipse") {
    if (params.size() < 2) fail(ErrorKind::ConfigError, "ellipse needs two semi-axes");
    AnalyticDomain d = ellipse(params[0], params[1]);
    d.scale_ = enlargement_scale;
    return d;
  }
  if (kind == "perturbed_disk" || kind == "perturbed-disk") {
    if (params.size() < 2) fail(ErrorKind::ConfigError, "perturbed disk needs amplitude, frequency");
    AnalyticDomain d = perturbed_disk(params[0], static_cast<int>(params[1]));
    d.scale_ = enlargement_scale;
    return d;
  }
  if (kind == "polynomial") {
    if (coeffs == nullptr) fail(ErrorKind::ConfigError, "polynomial domain needs coefficients");
    return from_polynomial(*coeffs, center, enlargement_scale);
  }
  fail(ErrorKind::ConfigError, "unknown domain kind '" + kind + "'");
}

void AnalyticDomain::validate() {
  if (rho_.eval(center_) <= 0.0)
    fail(ErrorKind::NotStarShaped, "defining function is not positive at the center");

  // First pass: find one crossing per ray to size the domain.
  r_max_ = 0.0;
  r_min_ = std::numeric_limits<double>::infinity();
  std::vector<double> radii(kValidationRays);
  for (int i = 0; i < kValidationRays; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / kValidationRays;
    radii[i] = boundary_radius(theta);
    r_max_ = std::max(r_max_, radii[i]);
    r_min_ = std::min(r_min_, radii[i]);
  }

  // Second pass: exactly one sign change per ray out to 3 * r_max, and a
  // nondegenerate gradient at the crossing.
  for (int i = 0; i < kValidationRays; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / kValidationRays;
    const Vec2 dir{std::cos(theta), std::sin(theta)};
    const double r_hi = 3.0 * r_max_;
    int sign_changes = 0;
    double prev = rho_.eval(center_);
    for (int k = 1; k <= kRayScanSamples; ++k) {
      const double r = r_hi * k / kRayScanSamples;
      const double v = rho_.eval(center_ + dir * r);
      if (prev > 0.0 && v <= 0.0) ++sign_changes;
      if (prev <= 0.0 && v > 0.0) ++sign_changes;
      prev = v;
    }
    if (sign_changes != 1)
      fail(ErrorKind::NotStarShaped,
           "ray at theta=" + std::to_string(theta) + " crosses the zero set " +
               std::to_string(sign_changes) + " times");
    const Vec2 p = center_ + dir * radii[i];
    const Vec2 grad{rho_dx_.eval(p), rho_dy_.eval(p)};
    if (grad.norm() < kGradThreshold)
      fail(ErrorKind::DegenerateBoundary,
           "gradient of the defining function below threshold at a boundary point");
  }
}

AnalyticDomain AnalyticDomain::enlarged() const {
  // rho'(x) = rho(c + (x - c)/s); the zero set dilates by s about c.
  const double s = scale_;
  Polynomial rho_prime = rho_.substitute_affine(center_.x * (1.0 - 1.0 / s), 1.0 / s,
                                                center_.y * (1.0 - 1.0 / s), 1.0 / s);
  AnalyticDomain d(std::move(rho_prime), center_, 1.0);
  d.validate();
  return d;
}

double AnalyticDomain::boundary_radius(double theta) const {
  const Vec2 dir{std::cos(theta), std::sin(theta)};
  // Bracket the first crossing by doubling, then scanning.
  double r_hi = (r_max_ > 0.0) ? 3.0 * r_max_ : 1.0;
  const auto f = [&](double r) { return rho_.eval(center_ + dir * r); };
  int doublings = 0;
  while (true) {
    bool found = false;
    double lo = 0.0;
    for (int k = 1; k <= kRayScanSamples; ++k) {
      const double r = r_hi * k / kRayScanSamples;
      if (f(r) <= 0.0) {
        lo = r_hi * (k - 1) / kRayScanSamples;
        r_hi = r;
        found = true;
        break;
      }
    }
    if (found) {
      double a = lo, b = r_hi;
      for (int it = 0; it < 200 && (b - a) > 1e-16 * std::max(1.0, b); ++it) {
        const double mid = 0.5 * (a + b);
        (f(mid) > 0.0 ? a : b) = mid;
      }
      double r = 0.5 * (a + b);
      // Newton polish.
      for (int it = 0; it < 8; ++it) {
        const Vec2 p = center_ + dir * r;
        const double v = rho_.eval(p);
        const double dv = rho_dx_.eval(p) * dir.x + rho_dy_.eval(p) * dir.y;
        if (std::abs(dv) < 1e-14) break;
        const double step = v / dv;
        r -= step;
        if (std::abs(step) < 1e-14 * std::max(1.0, r)) break;
      }
      return r;
    }
    r_hi *= 2.0;
    if (++doublings > 20)
      fail(ErrorKind::RootFindFailure, "no boundary crossing along ray theta=" +
                                           std::to_string(theta));
  }
}

QuadratureSet AnalyticDomain::boundary_trace(int n) const {
  if (n < 16) fail(ErrorKind::LengthMismatch, "boundary trace needs at least 16 points");
  QuadratureSet q;
  q.kind = QuadratureKind::Boundary;
  q.points.resize(n);
  q.weights.resize(n);
  std::vector<double> radii(n);
  for (int i = 0; i < n; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / n;
    radii[i] = boundary_radius(theta);
    q.points[i] = center_ + Vec2{std::cos(theta), std::sin(theta)} * radii[i];
  }
  // Arclength element |gamma'| = sqrt(r^2 + r'^2), r' by spectral
  // differentiation of the traced radius.
  const std::vector<double> dr = trig_derivative(radii);
  const double dtheta = 2.0 * std::numbers::pi / n;
  for (int i = 0; i < n; ++i)
    q.weights[i] = dtheta * std::sqrt(radii[i] * radii[i] + dr[i] * dr[i]);
  return q;
}

QuadratureSet AnalyticDomain::volume_quadrature(int n_radial, int n_angular) const {
  if (n_radial < 8 || n_angular < 8)
    fail(ErrorKind::LengthMismatch, "volume quadrature needs at least 8 nodes per direction");
  std::vector<double> gl_x, gl_w;
  gauss_legendre_01(n_radial, gl_x, gl_w);
  QuadratureSet q;
  q.kind = QuadratureKind::Volume;
  q.points.reserve(static_cast<std::size_t>(n_radial) * n_angular);
  q.weights.reserve(static_cast<std::size_t>(n_radial) * n_angular);
  const double dtheta = 2.0 * std::numbers::pi / n_angular;
  for (int j = 0; j < n_angular; ++j) {
    const double theta = dtheta * j;
    const Vec2 dir{std::cos(theta), std::sin(theta)};
    const double rb = boundary_radius(theta);
    for (int i = 0; i < n_radial; ++i) {
      const double r = rb * gl_x[i];
      q.points.push_back(center_ + dir * r);
      q.weights.push_back(gl_w[i] * rb * r * dtheta);  // Jacobian r dr dtheta
    }
  }
  return q;
}

}  // namespace divlab
