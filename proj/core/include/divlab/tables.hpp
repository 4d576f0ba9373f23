#pragma once

#include <functional>
#include <string>
#include <vector>

#include "divlab/domain.hpp"
#include "divlab/fields.hpp"
#include "divlab/jet.hpp"

namespace divlab {

/// Evaluator producing the jets of all components of a subject at a point.
using MultiJetFn = std::function<std::vector<Jet>(Vec2, int)>;

struct TableOptions {
  int i_max = 3;
  int j_max = 3;
  std::vector<int> alphabet = {1, 2, 3};
  int threads = 0;
};

/// Grid of mixed L2 norms ||d^alpha T^beta w|| with the tensorial
/// conventions: the stored entry at (i, beta) is the sum over |alpha| = i
/// (and over subject components) of the quadrature L2 norms.
class DerivativeTable {
 public:
  DerivativeTable() = default;
  DerivativeTable(std::string subject, int i_max, int j_max, std::vector<int> alphabet,
                  std::string quadrature_id);

  const std::string& subject() const { return subject_; }
  int i_max() const { return i_max_; }
  int j_max() const { return j_max_; }
  const std::vector<int>& alphabet() const { return alphabet_; }
  const std::string& quadrature_id() const { return quadrature_id_; }
  const std::vector<Word>& words() const { return words_; }
  bool empty() const { return words_.empty(); }

  double entry(int i, const Word& word) const;
  double entry(int i, std::size_t word_index) const;
  double& entry_ref(int i, std::size_t word_index);

  /// Tensorial norm ||d^i T^j w||: entry summed over all words of length j.
  double tensor_norm(int i, int j) const;

  /// Index of a word in the canonical (length, lexicographic) order.
  std::size_t word_index(const Word& word) const;

 private:
  std::string subject_;
  int i_max_ = 0, j_max_ = 0;
  std::vector<int> alphabet_;
  std::string quadrature_id_;
  std::vector<Word> words_;
  std::vector<double> values_;  // [word * (i_max+1) + i]
};

/// Builds the derivative table of a subject over a volume quadrature.
/// Requires subject jets of order i_max + j_max.
DerivativeTable build_table(const std::string& subject, const MultiJetFn& fn,
                            const KomatsuFamily& family, const QuadratureSet& quad,
                            const TableOptions& opts);

enum class CommutatorKind { Laplacian, Gradient };

/// Same grid for the exact commutators [T^beta, Lap] w (per component) or
/// [T^beta, grad] w (the two commutator components both enter the norm sum).
/// Requires subject jets of order i_max + j_max + 2.
DerivativeTable build_commutator_table(const std::string& subject, CommutatorKind kind,
                                       const MultiJetFn& fn, const KomatsuFamily& family,
                                       const QuadratureSet& quad, const TableOptions& opts);

/// Convenience evaluators.
MultiJetFn polynomial_subject(const Polynomial& p);
MultiJetFn polynomial_subject(const std::vector<Polynomial>& components);

}  // namespace divlab
