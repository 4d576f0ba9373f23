#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "divlab/domain.hpp"
#include "divlab/jet.hpp"
#include "divlab/polynomial.hpp"

namespace divlab {

/// First-order differential operator coeff_x d/dx + coeff_y d/dy with
/// polynomial coefficients.
struct VectorField {
  Polynomial coeff_x, coeff_y;

  Vec2 eval(Vec2 p) const { return {coeff_x.eval(p), coeff_y.eval(p)}; }
  /// Applies the field to a jet; drops the order by one. The coefficient
  /// jets are expanded on the fly at the jet's base point.
  Jet apply(const Jet& u) const;
};

/// A word beta = (beta_1, ..., beta_j) of tangential-field indices in
/// {1, 2, 3}; T^beta = T_{beta_1} ... T_{beta_j}, rightmost factor applied
/// first.
struct Word {
  std::vector<int> letters;

  int length() const { return static_cast<int>(letters.size()); }
  std::string str() const;  // "-" for the empty word
  static Word parse(const std::string& s);
  bool operator==(const Word&) const = default;
};

/// Enumerates all words of length 0..max_len over the alphabet, ordered by
/// length and then lexicographically.
std::vector<Word> enumerate_words(int max_len, const std::vector<int>& alphabet = {1, 2, 3});

/// Concrete analytic family on a domain with defining function rho:
///   X0 = grad(rho) . grad        (transversal)
///   T1 = rho d/dx, T2 = rho d/dy, T3 = (J grad rho) . grad  (tangential)
/// With D = |grad rho|^2 + rho^2 the identity
///   (d_k rho) X0 + rho T_k + (J grad rho)_k T3 = D d_k
/// holds exactly as polynomials, giving the interior representation with
/// xi_k = d_k rho / D, eta_kk = rho / D, eta_3k = (J grad rho)_k / D.
class KomatsuFamily {
 public:
  static constexpr int kNPrime = 2;
  static constexpr int kN = 3;

  static KomatsuFamily build(const AnalyticDomain& domain);

  const VectorField& x0() const { return x0_; }
  /// Tangential field T_k, k in 1..3.
  const VectorField& tangential(int k) const { return t_.at(k - 1); }
  const Polynomial& denominator() const { return d_; }

  /// Numerators of the representation coefficients (shared denominator D).
  const Polynomial& xi_numerator(int k) const { return xi_num_.at(k - 1); }
  const Polynomial& eta_numerator(int j, int k) const { return eta_num_.at(j - 1).at(k - 1); }

  /// T_{word} u, rightmost letter first. Requires u.order() >= word length.
  Jet apply_word(const Word& word, const Jet& u) const;

  /// [T^beta, Lap] u = T^beta(Lap u) - Lap(T^beta u); order drops by
  /// |beta| + 2. The empty word gives the zero jet.
  Jet commutator_with_laplacian(const Word& word, const Jet& u) const;

  /// [T^beta, grad] q, a 2-vector of jets; order drops by |beta| + 1.
  std::array<Jet, 2> commutator_with_gradient(const Word& word, const Jet& q) const;

  /// Depth-first walk over all words of length 0..max_len, reusing parent
  /// applications. visit(word, jet of T^word u) is called for every node
  /// including the empty word.
  void visit_words(const Jet& u, int max_len, const std::vector<int>& alphabet,
                   const std::function<void(const Word&, const Jet&)>& visit) const;

 private:
  VectorField x0_;
  std::array<VectorField, 3> t_;
  Polynomial d_;
  std::array<Polynomial, 2> xi_num_;
  std::array<std::array<Polynomial, 2>, 3> eta_num_;
};

}  // namespace divlab
