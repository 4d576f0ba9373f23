#include "divlab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "divlab/errors.hpp"

namespace divlab {

Jet VectorField::apply(const Jet& u) const {
  if (u.order() < 1) fail(ErrorKind::OrderExhausted, "field applied to an order-0 jet");
  const int m = u.order() - 1;
  const Jet cx = taylor_jet(coeff_x, u.base(), m);
  const Jet cy = taylor_jet(coeff_y, u.base(), m);
  return cx * u.dx() + cy * u.dy();
}

std::string Word::str() const {
  if (letters.empty()) return "-";
  std::string s;
  for (int l : letters) s += static_cast<char>('0' + l);
  return s;
}

Word Word::parse(const std::string& s) {
  Word w;
  if (s == "-" || s.empty()) return w;
  for (char c : s) w.letters.push_back(c - '0');
  return w;
}

std::vector<Word> enumerate_words(int max_len, const std::vector<int>& alphabet) {
  std::vector<Word> out;
  out.push_back(Word{});
  std::vector<Word> prev = out;
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : prev)
      for (int a : alphabet) {
        Word e = w;
        e.letters.push_back(a);
        next.push_back(std::move(e));
      }
    out.insert(out.end(), next.begin(), next.end());
    prev = std::move(next);
  }
  return out;
}

KomatsuFamily KomatsuFamily::build(const AnalyticDomain& domain) {
  KomatsuFamily f;
  const Polynomial& rho = domain.rho();
  const Polynomial gx = domain.rho_dx();
  const Polynomial gy = domain.rho_dy();

  f.x0_ = VectorField{gx, gy};
  f.t_[0] = VectorField{rho, Polynomial(0.0)};
  f.t_[1] = VectorField{Polynomial(0.0), rho};
  f.t_[2] = VectorField{-gy, gx};  // J grad rho

  f.d_ = gx * gx + gy * gy + rho * rho;
  f.xi_num_[0] = gx;
  f.xi_num_[1] = gy;
  // eta_{jk}: representation D d_k = (d_k rho) X0 + rho T_k + (J grad rho)_k T3
  f.eta_num_[0] = {rho, Polynomial(0.0)};
  f.eta_num_[1] = {Polynomial(0.0), rho};
  f.eta_num_[2] = {-gy, gx};

  // The identity above must hold coefficient-exactly; verify it.
  const double scale = std::max(1.0, f.d_.max_abs_coeff());
  for (int k = 0; k < 2; ++k) {
    const Polynomial& dk_rho = (k == 0) ? gx : gy;
    const Polynomial jk = (k == 0) ? -gy : gx;
    const Polynomial resid_x = dk_rho * gx + ((k == 0) ? rho * rho : Polynomial(0.0)) +
                               jk * (-gy) - ((k == 0) ? f.d_ : Polynomial(0.0));
    const Polynomial resid_y = dk_rho * gy + ((k == 1) ? rho * rho : Polynomial(0.0)) +
                               jk * gx - ((k == 1) ? f.d_ : Polynomial(0.0));
    if (!resid_x.is_zero(1e-12 * scale) || !resid_y.is_zero(1e-12 * scale))
      fail(ErrorKind::DegenerateBoundary, "representation identity failed to close");
  }

  // D must be positive on the closure; check on a quadrature sample.
  const QuadratureSet vol = domain.volume_quadrature(12, 24);
  const QuadratureSet bnd = domain.boundary_trace(64);
  double dmin = std::numeric_limits<double>::infinity();
  for (const Vec2& p : vol.points) dmin = std::min(dmin, f.d_.eval(p));
  for (const Vec2& p : bnd.points) dmin = std::min(dmin, f.d_.eval(p));
  if (!(dmin > 0.0))
    fail(ErrorKind::DegenerateBoundary, "representation denominator vanishes on the closure");
  return f;
}

Jet KomatsuFamily::apply_word(const Word& word, const Jet& u) const {
  if (u.order() < word.length())
    fail(ErrorKind::OrderExhausted, "jet order below word length");
  Jet cur = u;
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it)
    cur = tangential(*it).apply(cur);
  return cur;
}

Jet KomatsuFamily::commutator_with_laplacian(const Word& word, const Jet& u) const {
  const int j = word.length();
  if (u.order() < j + 2)
    fail(ErrorKind::OrderExhausted, "jet order below word length + 2");
  if (j == 0) return Jet(u.base(), u.order() - 2);
  const Jet a = apply_word(word, u.laplacian());
  const Jet b = apply_word(word, u).laplacian();
  return a - b;
}

std::array<Jet, 2> KomatsuFamily::commutator_with_gradient(const Word& word,
                                                           const Jet& q) const {
  const int j = word.length();
  if (q.order() < j + 1)
    fail(ErrorKind::OrderExhausted, "jet order below word length + 1");
  if (j == 0) {
    Jet z(q.base(), q.order() - 1);
    return {z, z};
  }
  const Jet tq = apply_word(word, q);
  return {apply_word(word, q.dx()) - tq.dx(), apply_word(word, q.dy()) - tq.dy()};
}

void KomatsuFamily::visit_words(const Jet& u, int max_len, const std::vector<int>& alphabet,
                                const std::function<void(const Word&, const Jet&)>& visit) const {
  if (u.order() < max_len) fail(ErrorKind::OrderExhausted, "jet order below max word length");
  // Coefficient jets at the point, reused at every depth via truncation.
  const int m = u.order();
  std::array<std::pair<Jet, Jet>, 3> coeff{{{taylor_jet(t_[0].coeff_x, u.base(), m),
                                             taylor_jet(t_[0].coeff_y, u.base(), m)},
                                            {taylor_jet(t_[1].coeff_x, u.base(), m),
                                             taylor_jet(t_[1].coeff_y, u.base(), m)},
                                            {taylor_jet(t_[2].coeff_x, u.base(), m),
                                             taylor_jet(t_[2].coeff_y, u.base(), m)}}};
  // child = T_a(T^w u) = T^{(a) ++ w} u, so the label grows at the front.
  Word word;
  const std::function<void(const Jet&)> dfs = [&](const Jet& cur) {
    visit(word, cur);
    if (word.length() == max_len) return;
    const int next_order = cur.order() - 1;
    for (int a : alphabet) {
      Jet child = coeff[a - 1].first.truncated(next_order) * cur.dx() +
                  coeff[a - 1].second.truncated(next_order) * cur.dy();
      word.letters.insert(word.letters.begin(), a);
      dfs(child);
      word.letters.erase(word.letters.begin());
    }
  };
  dfs(u);
}

}  // namespace divlab
