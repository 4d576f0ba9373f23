#include "divlab/tables.hpp"

#include <cmath>
#include <cstdio>

#include "divlab/errors.hpp"
#include "divlab/parallel.hpp"

namespace divlab {

namespace {

constexpr std::size_t kPointsPerBlock = 16;

inline std::size_t tri(int k) { return static_cast<std::size_t>(k * (k + 1) / 2); }

// Position of a word in (length, lexicographic-by-alphabet) order.
std::size_t canonical_word_index(const Word& w, const std::vector<int>& alphabet) {
  const std::size_t base = alphabet.size();
  std::size_t before = 0, pw = 1;
  for (int l = 0; l < w.length(); ++l) {
    before += pw;
    pw *= base;
  }
  std::size_t offset = 0;
  for (int l : w.letters) {
    std::size_t pos = 0;
    while (pos < base && alphabet[pos] != l) ++pos;
    offset = offset * base + pos;
  }
  return before + offset;
}

// Coefficient jets of the three tangential fields at one point, shared
// across the word tree.
struct FieldJets {
  std::array<Jet, 3> cx, cy;

  FieldJets(const KomatsuFamily& family, Vec2 p, int order)
      : cx{taylor_jet(family.tangential(1).coeff_x, p, order),
           taylor_jet(family.tangential(2).coeff_x, p, order),
           taylor_jet(family.tangential(3).coeff_x, p, order)},
        cy{taylor_jet(family.tangential(1).coeff_y, p, order),
           taylor_jet(family.tangential(2).coeff_y, p, order),
           taylor_jet(family.tangential(3).coeff_y, p, order)} {}

  Jet apply(int letter, const Jet& u) const {
    const int m = u.order() - 1;
    return cx[letter - 1].truncated(m) * u.dx() + cy[letter - 1].truncated(m) * u.dy();
  }
};

// Depth-first walk over words carrying a small state of jets; each child
// applies one tangential field to every carried jet.
void dfs_words(const FieldJets& fields, const std::vector<int>& alphabet, int max_len,
               std::vector<Jet>& state, Word& word,
               const std::function<void(const Word&, const std::vector<Jet>&)>& visit) {
  visit(word, state);
  if (word.length() == max_len) return;
  for (int a : alphabet) {
    std::vector<Jet> child;
    child.reserve(state.size());
    for (const Jet& j : state) child.push_back(fields.apply(a, j));
    word.letters.insert(word.letters.begin(), a);
    dfs_words(fields, alphabet, max_len, child, word, visit);
    word.letters.erase(word.letters.begin());
  }
}

std::string quad_id(const QuadratureSet& quad) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "volume:%zu", quad.size());
  return buf;
}

// Shared accumulation driver: `emit` maps the carried state at a word node
// to the list of jets whose |alpha| <= i_max derivatives enter the norms.
DerivativeTable accumulate_table(
    const std::string& subject, const MultiJetFn& fn, const KomatsuFamily& family,
    const QuadratureSet& quad, const TableOptions& opts, int jet_order,
    const std::function<std::vector<Jet>(Vec2, int)>& initial_state,
    const std::function<std::vector<Jet>(const std::vector<Jet>&)>& emit) {
  if (quad.size() == 0) fail(ErrorKind::LengthMismatch, "empty quadrature");
  DerivativeTable table(subject, opts.i_max, opts.j_max, opts.alphabet, quad_id(quad));
  const std::size_t n_words = table.words().size();
  const std::size_t n_alpha = tri(opts.i_max + 1);

  // Probe the emitted component count at the first point.
  std::vector<Jet> probe_state = initial_state(quad.points[0], jet_order);
  const std::size_t n_comp = emit(probe_state).size();
  const std::size_t slot = n_words * n_alpha * n_comp;

  const std::size_t nblocks = block_count(quad.size(), kPointsPerBlock);
  std::vector<std::vector<double>> partial(nblocks);

  parallel_blocks(quad.size(), kPointsPerBlock, opts.threads,
                  [&](std::size_t lo, std::size_t hi, std::size_t block) {
    std::vector<double> acc(slot, 0.0);
    for (std::size_t pidx = lo; pidx < hi; ++pidx) {
      const Vec2 p = quad.points[pidx];
      const double wq = quad.weights[pidx];
      const FieldJets fields(family, p, jet_order);
      std::vector<Jet> state = initial_state(p, jet_order);
      Word word;
      dfs_words(fields, opts.alphabet, opts.j_max, state, word,
                [&](const Word& w, const std::vector<Jet>& node) {
        const std::size_t widx = canonical_word_index(w, opts.alphabet);
        const std::vector<Jet> emitted = emit(node);
        for (std::size_t c = 0; c < emitted.size(); ++c) {
          const Jet& jet = emitted[c];
          double* dst = acc.data() + (widx * n_comp + c) * n_alpha;
          for (int k = 0; k <= opts.i_max; ++k)
            for (int b = 0; b <= k; ++b) {
              const int a = k - b;
              double f = 1.0;
              for (int t = 2; t <= a; ++t) f *= t;
              for (int t = 2; t <= b; ++t) f *= t;
              const double val = jet.coeff(a, b) * f;
              dst[tri(k) + static_cast<std::size_t>(b)] += wq * val * val;
            }
        }
      });
    }
    partial[block] = std::move(acc);
  });

  // Deterministic reduction in block order.
  std::vector<double> acc(slot, 0.0);
  for (const auto& part : partial)
    for (std::size_t i = 0; i < slot; ++i) acc[i] += part[i];

  for (std::size_t w = 0; w < n_words; ++w)
    for (int i = 0; i <= opts.i_max; ++i) {
      double sum = 0.0;
      for (std::size_t c = 0; c < n_comp; ++c) {
        const double* src = acc.data() + (w * n_comp + c) * n_alpha;
        for (int b = 0; b <= i; ++b) sum += std::sqrt(src[tri(i) + static_cast<std::size_t>(b)]);
      }
      table.entry_ref(i, w) = sum;
    }
  return table;
}

}  // namespace

DerivativeTable::DerivativeTable(std::string subject, int i_max, int j_max,
                                 std::vector<int> alphabet, std::string quadrature_id)
    : subject_(std::move(subject)),
      i_max_(i_max),
      j_max_(j_max),
      alphabet_(std::move(alphabet)),
      quadrature_id_(std::move(quadrature_id)),
      words_(enumerate_words(j_max, alphabet_)),
      values_(words_.size() * static_cast<std::size_t>(i_max + 1), 0.0) {}

double DerivativeTable::entry(int i, const Word& word) const {
  return entry(i, word_index(word));
}

double DerivativeTable::entry(int i, std::size_t word_index) const {
  if (i < 0 || i > i_max_ || word_index >= words_.size())
    fail(ErrorKind::TruncationTooSmall, "table entry out of range");
  return values_[word_index * static_cast<std::size_t>(i_max_ + 1) + static_cast<std::size_t>(i)];
}

double& DerivativeTable::entry_ref(int i, std::size_t word_index) {
  return values_[word_index * static_cast<std::size_t>(i_max_ + 1) + static_cast<std::size_t>(i)];
}

double DerivativeTable::tensor_norm(int i, int j) const {
  if (i < 0 || i > i_max_ || j < 0 || j > j_max_)
    fail(ErrorKind::TruncationTooSmall, "tensor norm out of table range");
  double sum = 0.0;
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w].length() == j) sum += entry(i, w);
  return sum;
}

std::size_t DerivativeTable::word_index(const Word& word) const {
  const std::size_t idx = canonical_word_index(word, alphabet_);
  if (idx >= words_.size() || !(words_[idx] == word))
    fail(ErrorKind::TruncationTooSmall, "word not present in table");
  return idx;
}

DerivativeTable build_table(const std::string& subject, const MultiJetFn& fn,
                            const KomatsuFamily& family, const QuadratureSet& quad,
                            const TableOptions& opts) {
  const int order = opts.i_max + opts.j_max;
  return accumulate_table(subject, fn, family, quad, opts, order,
                          [&](Vec2 p, int m) { return fn(p, m); },
                          [](const std::vector<Jet>& state) { return state; });
}

DerivativeTable build_commutator_table(const std::string& subject, CommutatorKind kind,
                                       const MultiJetFn& fn, const KomatsuFamily& family,
                                       const QuadratureSet& quad, const TableOptions& opts) {
  const int order = opts.i_max + opts.j_max + 2;
  if (kind == CommutatorKind::Laplacian) {
    // State per component: (T^w Lap u, T^w u); commutator = first - Lap(second).
    return accumulate_table(
        subject, fn, family, quad, opts, order,
        [&](Vec2 p, int m) {
          std::vector<Jet> comps = fn(p, m);
          std::vector<Jet> state;
          state.reserve(2 * comps.size());
          for (const Jet& u : comps) {
            state.push_back(u.laplacian());
            state.push_back(u);
          }
          return state;
        },
        [](const std::vector<Jet>& state) {
          std::vector<Jet> out;
          out.reserve(state.size() / 2);
          for (std::size_t c = 0; c + 1 < state.size(); c += 2)
            out.push_back(state[c].truncated(state[c + 1].order() - 2) -
                          state[c + 1].laplacian());
          return out;
        });
  }
  // Gradient: state per component: (T^w dq/dx, T^w dq/dy, T^w q);
  // commutator components are (first - d/dx third, second - d/dy third).
  return accumulate_table(
      subject, fn, family, quad, opts, order,
      [&](Vec2 p, int m) {
        std::vector<Jet> comps = fn(p, m);
        std::vector<Jet> state;
        state.reserve(3 * comps.size());
        for (const Jet& q : comps) {
          state.push_back(q.dx());
          state.push_back(q.dy());
          state.push_back(q);
        }
        return state;
      },
      [](const std::vector<Jet>& state) {
        std::vector<Jet> out;
        out.reserve(2 * (state.size() / 3));
        for (std::size_t c = 0; c + 2 < state.size(); c += 3) {
          const Jet& gx = state[c];
          const Jet& gy = state[c + 1];
          const Jet& g = state[c + 2];
          out.push_back(gx.truncated(g.order() - 1) - g.dx());
          out.push_back(gy.truncated(g.order() - 1) - g.dy());
        }
        return out;
      });
}

MultiJetFn polynomial_subject(const Polynomial& p) {
  return polynomial_subject(std::vector<Polynomial>{p});
}

MultiJetFn polynomial_subject(const std::vector<Polynomial>& components) {
  return [components](Vec2 p, int order) {
    std::vector<Jet> jets;
    jets.reserve(components.size());
    for (const auto& c : components) jets.push_back(taylor_jet(c, p, order));
    return jets;
  };
}

}  // namespace divlab
