#include "divlab/jet.hpp"

#include <cmath>

#include "divlab/errors.hpp"

namespace divlab {

namespace {
inline std::size_t tri_idx(int a, int b) {
  const int k = a + b;
  return static_cast<std::size_t>(k * (k + 1) / 2 + b);
}
}  // namespace

Jet::Jet(Vec2 base, int order) : base_(base), order_(order), c_(storage_size(order), 0.0) {
  if (order < 0) fail(ErrorKind::OrderExhausted, "jet order must be nonnegative");
}

Jet Jet::constant(Vec2 base, int order, double value) {
  Jet j(base, order);
  j.c_[0] = value;
  return j;
}

double Jet::coeff(int a, int b) const {
  if (a < 0 || b < 0 || a + b > order_) return 0.0;
  return c_[tri_idx(a, b)];
}

double& Jet::at(int a, int b) {
  if (a < 0 || b < 0 || a + b > order_)
    fail(ErrorKind::OrderExhausted, "coefficient index beyond jet order");
  return c_[tri_idx(a, b)];
}

double Jet::derivative(int a, int b) const {
  if (a + b > order_)
    fail(ErrorKind::OrderExhausted, "derivative order beyond jet truncation");
  double f = 1.0;
  for (int i = 2; i <= a; ++i) f *= i;
  for (int i = 2; i <= b; ++i) f *= i;
  return coeff(a, b) * f;
}

Jet Jet::truncated(int order) const {
  if (order > order_) fail(ErrorKind::OrderExhausted, "cannot truncate upward");
  Jet out(base_, order);
  std::copy(c_.begin(), c_.begin() + static_cast<long>(storage_size(order)), out.c_.begin());
  return out;
}

Jet Jet::dx() const {
  if (order_ < 1) fail(ErrorKind::OrderExhausted, "dx of an order-0 jet");
  Jet out(base_, order_ - 1);
  for (int k = 0; k < order_; ++k)
    for (int b = 0; b <= k; ++b)
      out.c_[tri_idx(k - b, b)] = (k - b + 1) * c_[tri_idx(k - b + 1, b)];
  return out;
}

Jet Jet::dy() const {
  if (order_ < 1) fail(ErrorKind::OrderExhausted, "dy of an order-0 jet");
  Jet out(base_, order_ - 1);
  for (int k = 0; k < order_; ++k)
    for (int b = 0; b <= k; ++b)
      out.c_[tri_idx(k - b, b)] = (b + 1) * c_[tri_idx(k - b, b + 1)];
  return out;
}

double Jet::eval(Vec2 offset) const {
  // Horner over total degree: sum_k h^k block evaluated with powers.
  std::vector<double> xp(order_ + 1, 1.0), yp(order_ + 1, 1.0);
  for (int k = 1; k <= order_; ++k) {
    xp[k] = xp[k - 1] * offset.x;
    yp[k] = yp[k - 1] * offset.y;
  }
  double total = 0.0;
  for (int k = order_; k >= 0; --k)
    for (int b = 0; b <= k; ++b) total += c_[tri_idx(k - b, b)] * xp[k - b] * yp[b];
  return total;
}

void Jet::require_compatible(const Jet& o) const {
  if (!(base_ == o.base_)) fail(ErrorKind::BasePointMismatch, "jets expanded at different points");
  if (order_ != o.order_) fail(ErrorKind::OrderMismatch, "jets truncated at different orders");
}

Jet Jet::operator+(const Jet& o) const {
  require_compatible(o);
  Jet out = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] += o.c_[i];
  return out;
}

Jet Jet::operator-(const Jet& o) const {
  require_compatible(o);
  Jet out = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] -= o.c_[i];
  return out;
}

Jet Jet::operator*(const Jet& o) const {
  require_compatible(o);
  Jet out(base_, order_);
  for (int k1 = 0; k1 <= order_; ++k1)
    for (int b1 = 0; b1 <= k1; ++b1) {
      const double c1 = c_[tri_idx(k1 - b1, b1)];
      if (c1 == 0.0) continue;
      const int kmax = order_ - k1;
      for (int k2 = 0; k2 <= kmax; ++k2)
        for (int b2 = 0; b2 <= k2; ++b2)
          out.c_[tri_idx(k1 - b1 + k2 - b2, b1 + b2)] += c1 * o.c_[tri_idx(k2 - b2, b2)];
    }
  return out;
}

Jet Jet::operator*(double s) const {
  Jet out = *this;
  for (auto& c : out.c_) c *= s;
  return out;
}

Jet taylor_jet(const Polynomial& p, Vec2 base, int order) {
  // Expand each monomial (base.x + hx)^a (base.y + hy)^b, truncated.
  Jet out(base, order);
  const int deg = p.degree();
  for (int k = 0; k <= deg; ++k)
    for (int b = 0; b <= k; ++b) {
      const int a = k - b;
      const double c = p.coeff(a, b);
      if (c == 0.0) continue;
      std::vector<double> px(a + 1), py(b + 1);
      // px[i] = C(a,i) base.x^{a-i}
      double binom = 1.0, pw = 1.0;
      for (int i = 0; i <= a; ++i) {
        px[i] = binom;
        binom = binom * (a - i) / (i + 1);
      }
      for (int i = a; i >= 0; --i) {
        px[i] *= pw;
        pw *= base.x;
      }
      binom = 1.0;
      for (int j = 0; j <= b; ++j) {
        py[j] = binom;
        binom = binom * (b - j) / (j + 1);
      }
      pw = 1.0;
      for (int j = b; j >= 0; --j) {
        py[j] *= pw;
        pw *= base.y;
      }
      const int imax = std::min(a, order);
      for (int i = 0; i <= imax; ++i)
        for (int j = 0; j <= std::min(b, order - i); ++j) out.at(i, j) += c * px[i] * py[j];
    }
  return out;
}

Jet compose_series(std::span<const double> outer_coeffs, const Jet& inner) {
  const int m = inner.order();
  if (static_cast<int>(outer_coeffs.size()) < m + 1)
    fail(ErrorKind::OrderExhausted, "outer series shorter than inner order");
  Jet u = inner;
  u.at(0, 0) = 0.0;  // inner - inner(0)
  Jet out = Jet::constant(inner.base(), m, outer_coeffs[m]);
  for (int k = m - 1; k >= 0; --k) {
    out = out * u;
    out.at(0, 0) += outer_coeffs[k];
  }
  return out;
}

std::vector<double> recip_series(double t0, int order) {
  if (t0 == 0.0) fail(ErrorKind::OutsideConvergence, "reciprocal about zero");
  std::vector<double> o(order + 1);
  double v = 1.0 / t0;
  for (int k = 0; k <= order; ++k) {
    o[k] = v;
    v *= -1.0 / t0;
  }
  return o;
}

std::vector<double> log_series(double t0, int order) {
  if (t0 <= 0.0) fail(ErrorKind::OutsideConvergence, "log about a nonpositive point");
  std::vector<double> o(order + 1);
  o[0] = std::log(t0);
  double pw = 1.0;  // (-1)^{k+1} / t0^k
  for (int k = 1; k <= order; ++k) {
    pw *= ((k == 1) ? 1.0 : -1.0) / t0;
    o[k] = pw / k;
  }
  return o;
}

std::vector<double> sqrt_series(double t0, int order) {
  if (t0 <= 0.0) fail(ErrorKind::OutsideConvergence, "sqrt about a nonpositive point");
  std::vector<double> o(order + 1);
  // binom(1/2, k) t0^{1/2 - k}
  double coef = std::sqrt(t0);
  double binom = 1.0;
  o[0] = coef;
  for (int k = 1; k <= order; ++k) {
    binom = binom * (0.5 - (k - 1)) / k;
    coef /= t0;
    o[k] = binom * coef;
  }
  return o;
}

}  // namespace divlab
