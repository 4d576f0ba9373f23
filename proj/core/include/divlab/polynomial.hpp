#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "divlab/vec2.hpp"

namespace divlab {

/// Dense bivariate polynomial, coefficients stored by total degree.
///
/// The layout matches Jet: coefficient of x^a y^b sits at tri(a+b) + b,
/// where tri(k) = k(k+1)/2. All arithmetic is exact up to floating point
/// rounding; nothing is trimmed implicitly.
class Polynomial {
 public:
  Polynomial() : degree_(0), c_(1, 0.0) {}
  explicit Polynomial(double constant) : degree_(0), c_(1, constant) {}

  static Polynomial monomial(int a, int b, double coeff);
  /// Builds from (a, b, coeff) triples.
  static Polynomial from_terms(std::initializer_list<std::array<double, 3>> terms);
  static Polynomial from_terms(const std::vector<std::array<double, 3>>& terms);
  /// Re((x + iy)^k), the degree-k harmonic polynomial.
  static Polynomial harmonic_re(int k);
  /// x or y as a polynomial.
  static Polynomial coordinate(int axis);

  int degree() const { return degree_; }
  double coeff(int a, int b) const;
  void set_coeff(int a, int b, double value);

  double eval(Vec2 p) const;

  Polynomial dx() const;
  Polynomial dy() const;
  Polynomial laplacian() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(double s) const;
  Polynomial operator-() const { return *this * -1.0; }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  /// p(ax + bx*x, ay + by*y); used for dilations about a center.
  Polynomial substitute_affine(double ax, double bx, double ay, double by) const;

  /// Largest |coefficient|; 0 for the zero polynomial.
  double max_abs_coeff() const;
  /// True if every coefficient is within eps of zero.
  bool is_zero(double eps = 0.0) const;
  /// Drops trailing all-zero degree blocks (exact zeros only).
  Polynomial trimmed() const;

  /// Antiderivative twice in x (axis 0) or y (axis 1): result has
  /// d^2/daxis^2 result == *this, with no polynomial kernel terms added.
  Polynomial double_antiderivative(int axis) const;

  std::string to_string() const;

 private:
  explicit Polynomial(int degree) : degree_(degree), c_(size(degree), 0.0) {}
  static std::size_t size(int degree) {
    return static_cast<std::size_t>((degree + 1) * (degree + 2) / 2);
  }
  static std::size_t idx(int a, int b) {
    const int k = a + b;
    return static_cast<std::size_t>(k * (k + 1) / 2 + b);
  }

  int degree_;
  std::vector<double> c_;
};

}  // namespace divlab
