#include "divlab/polynomial.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <vector>

namespace divlab {

Polynomial Polynomial::monomial(int a, int b, double coeff) {
  Polynomial p(a + b);
  p.c_[idx(a, b)] = coeff;
  return p;
}

Polynomial Polynomial::from_terms(std::initializer_list<std::array<double, 3>> terms) {
  return from_terms(std::vector<std::array<double, 3>>(terms));
}

Polynomial Polynomial::from_terms(const std::vector<std::array<double, 3>>& terms) {
  int deg = 0;
  for (const auto& t : terms) deg = std::max(deg, static_cast<int>(t[0]) + static_cast<int>(t[1]));
  Polynomial p(deg);
  for (const auto& t : terms)
    p.c_[idx(static_cast<int>(t[0]), static_cast<int>(t[1]))] += t[2];
  return p;
}

Polynomial Polynomial::harmonic_re(int k) {
  // Re(x+iy)^k = sum_j C(k,j) x^{k-j} y^j Re(i^j)
  Polynomial p(k);
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    const int rem = j % 4;
    const double re_ij = (rem == 0) ? 1.0 : (rem == 2) ? -1.0 : 0.0;
    if (re_ij != 0.0) p.c_[idx(k - j, j)] = binom * re_ij;
    binom = binom * (k - j) / (j + 1);
  }
  return p;
}

Polynomial Polynomial::coordinate(int axis) {
  return axis == 0 ? monomial(1, 0, 1.0) : monomial(0, 1, 1.0);
}

double Polynomial::coeff(int a, int b) const {
  if (a < 0 || b < 0 || a + b > degree_) return 0.0;
  return c_[idx(a, b)];
}

void Polynomial::set_coeff(int a, int b, double value) {
  if (a + b > degree_) {
    Polynomial grown(a + b);
    for (int k = 0; k <= degree_; ++k)
      for (int bb = 0; bb <= k; ++bb) grown.c_[idx(k - bb, bb)] = c_[idx(k - bb, bb)];
    *this = grown;
  }
  c_[idx(a, b)] = value;
}

double Polynomial::eval(Vec2 p) const {
  // Evaluate degree block by degree block: sum_k sum_b c[k-b][b] x^{k-b} y^b.
  double total = 0.0;
  std::vector<double> xp(degree_ + 1, 1.0), yp(degree_ + 1, 1.0);
  for (int k = 1; k <= degree_; ++k) {
    xp[k] = xp[k - 1] * p.x;
    yp[k] = yp[k - 1] * p.y;
  }
  for (int k = degree_; k >= 0; --k) {
    double block = 0.0;
    for (int b = 0; b <= k; ++b) block += c_[idx(k - b, b)] * xp[k - b] * yp[b];
    total += block;
  }
  return total;
}

Polynomial Polynomial::dx() const {
  Polynomial out(std::max(0, degree_ - 1));
  for (int k = 1; k <= degree_; ++k)
    for (int b = 0; b <= k; ++b) {
      const int a = k - b;
      if (a >= 1) out.c_[idx(a - 1, b)] += a * c_[idx(a, b)];
    }
  return out;
}

Polynomial Polynomial::dy() const {
  Polynomial out(std::max(0, degree_ - 1));
  for (int k = 1; k <= degree_; ++k)
    for (int b = 1; b <= k; ++b) out.c_[idx(k - b, b - 1)] += b * c_[idx(k - b, b)];
  return out;
}

Polynomial Polynomial::laplacian() const { return dx().dx() + dy().dy(); }

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial out(std::max(degree_, o.degree_));
  for (int k = 0; k <= degree_; ++k)
    for (int b = 0; b <= k; ++b) out.c_[idx(k - b, b)] += c_[idx(k - b, b)];
  for (int k = 0; k <= o.degree_; ++k)
    for (int b = 0; b <= k; ++b) out.c_[idx(k - b, b)] += o.c_[idx(k - b, b)];
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (o * -1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out(degree_ + o.degree_);
  for (int k1 = 0; k1 <= degree_; ++k1)
    for (int b1 = 0; b1 <= k1; ++b1) {
      const double c1 = c_[idx(k1 - b1, b1)];
      if (c1 == 0.0) continue;
      for (int k2 = 0; k2 <= o.degree_; ++k2)
        for (int b2 = 0; b2 <= k2; ++b2) {
          const double c2 = o.c_[idx(k2 - b2, b2)];
          if (c2 == 0.0) continue;
          out.c_[idx(k1 - b1 + k2 - b2, b1 + b2)] += c1 * c2;
        }
    }
  return out;
}

Polynomial Polynomial::operator*(double s) const {
  Polynomial out = *this;
  for (auto& c : out.c_) c *= s;
  return out;
}

Polynomial Polynomial::substitute_affine(double ax, double bx, double ay, double by) const {
  // Expand (ax + bx x)^a (ay + by y)^b monomial by monomial.
  Polynomial out(degree_);
  for (int k = 0; k <= degree_; ++k)
    for (int b = 0; b <= k; ++b) {
      const int a = k - b;
      const double c = c_[idx(a, b)];
      if (c == 0.0) continue;
      // (ax + bx x)^a = sum_i C(a,i) ax^{a-i} bx^i x^i
      std::vector<double> px(a + 1), py(b + 1);
      double binom = 1.0;
      for (int i = 0; i <= a; ++i) {
        px[i] = binom * std::pow(ax, a - i) * std::pow(bx, i);
        binom = binom * (a - i) / (i + 1);
      }
      binom = 1.0;
      for (int j = 0; j <= b; ++j) {
        py[j] = binom * std::pow(ay, b - j) * std::pow(by, j);
        binom = binom * (b - j) / (j + 1);
      }
      for (int i = 0; i <= a; ++i)
        for (int j = 0; j <= b; ++j) out.c_[idx(i, j)] += c * px[i] * py[j];
    }
  return out;
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double c : c_) m = std::max(m, std::abs(c));
  return m;
}

bool Polynomial::is_zero(double eps) const {
  for (double c : c_)
    if (std::abs(c) > eps) return false;
  return true;
}

Polynomial Polynomial::trimmed() const {
  int deg = degree_;
  while (deg > 0) {
    bool all_zero = true;
    for (int b = 0; b <= deg; ++b)
      if (c_[idx(deg - b, b)] != 0.0) { all_zero = false; break; }
    if (!all_zero) break;
    --deg;
  }
  Polynomial out(deg);
  for (int k = 0; k <= deg; ++k)
    for (int b = 0; b <= k; ++b) out.c_[idx(k - b, b)] = c_[idx(k - b, b)];
  return out;
}

Polynomial Polynomial::double_antiderivative(int axis) const {
  Polynomial out(degree_ + 2);
  for (int k = 0; k <= degree_; ++k)
    for (int b = 0; b <= k; ++b) {
      const int a = k - b;
      const double c = c_[idx(a, b)];
      if (c == 0.0) continue;
      if (axis == 0)
        out.c_[idx(a + 2, b)] += c / ((a + 1.0) * (a + 2.0));
      else
        out.c_[idx(a, b + 2)] += c / ((b + 1.0) * (b + 2.0));
    }
  return out;
}

std::string Polynomial::to_string() const {
  std::string s;
  char buf[64];
  for (int k = 0; k <= degree_; ++k)
    for (int b = 0; b <= k; ++b) {
      const double c = c_[idx(k - b, b)];
      if (c == 0.0) continue;
      std::snprintf(buf, sizeof buf, "%s%.12g*x^%d*y^%d", s.empty() ? "" : " + ", c, k - b, b);
      s += buf;
    }
  return s.empty() ? "0" : s;
}

}  // namespace divlab
