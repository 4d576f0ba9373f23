#pragma once

#include <span>
#include <vector>

#include "divlab/polynomial.hpp"
#include "divlab/vec2.hpp"

namespace divlab {

/// Truncated bivariate Taylor expansion at a base point.
///
/// Coefficients are stored in scaled form, c(a,b) = d^a_x d^b_y u / (a! b!),
/// ordered by total degree then by b. Binary operations require matching
/// base point and order; multiplication is the Cauchy product truncated at
/// the shared order.
class Jet {
 public:
  Jet(Vec2 base, int order);
  static Jet constant(Vec2 base, int order, double value);

  Vec2 base() const { return base_; }
  int order() const { return order_; }

  double coeff(int a, int b) const;
  double& at(int a, int b);
  /// d^a_x d^b_y u at the base point (coefficient times a! b!).
  double derivative(int a, int b) const;
  double value() const { return c_[0]; }

  /// Prefix copy at a lower order.
  Jet truncated(int order) const;

  Jet dx() const;
  Jet dy() const;
  Jet laplacian() const { return dx().dx() + dy().dy(); }

  /// Evaluates the jet polynomial at base + offset.
  double eval(Vec2 offset) const;

  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet operator*(const Jet& o) const;
  Jet operator*(double s) const;
  Jet operator-() const { return *this * -1.0; }
  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }

  static std::size_t storage_size(int order) {
    return static_cast<std::size_t>((order + 1) * (order + 2) / 2);
  }

 private:
  void require_compatible(const Jet& o) const;

  Vec2 base_;
  int order_;
  std::vector<double> c_;
};

/// Taylor expansion of a polynomial about a base point, truncated at order.
Jet taylor_jet(const Polynomial& p, Vec2 base, int order);

/// Composition outer(inner) where outer is given by its Taylor coefficients
/// about inner.value(): outer(t) = sum_k outer_coeffs[k] (t - inner.value())^k.
/// Evaluated by Horner on the zero-constant part of inner.
Jet compose_series(std::span<const double> outer_coeffs, const Jet& inner);

/// Taylor coefficients of 1/t about t0 (throws OutsideConvergence at t0 = 0).
std::vector<double> recip_series(double t0, int order);
/// Taylor coefficients of log t about t0 > 0.
std::vector<double> log_series(double t0, int order);
/// Taylor coefficients of sqrt(t) about t0 > 0.
std::vector<double> sqrt_series(double t0, int order);

}  // namespace divlab
