#pragma once

#include <nichols/linalg.hpp>
#include <nichols/nichols.hpp>
#include <nichols/tensor.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace nichols {

// Homogeneous generators of a two-sided ideal; zeros and repeats are dropped.
class GeneratorSet {
 public:
  GeneratorSet() = default;
  explicit GeneratorSet(std::size_t dim) : dim_(dim) {}
  GeneratorSet(std::size_t dim, const std::vector<TensorVector>& gens) : dim_(dim) {
    for (const auto& g : gens) add(g);
  }

  void add(const TensorVector& g) {
    if (g.dim() != dim_) throw std::invalid_argument("generator over the wrong alphabet");
    if (g.is_zero()) return;
    for (const auto& h : gens_)
      if (h == g) return;
    gens_.push_back(g);
  }

  std::size_t dim() const { return dim_; }
  const std::vector<TensorVector>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }

 private:
  std::size_t dim_ = 3;
  std::vector<TensorVector> gens_;
};

// Slices I_0..I_N of the ideal, built as V·I_{n-1} + I_{n-1}·V + (generators of degree n).
inline std::vector<Subspace> ideal_slices(const GeneratorSet& g, std::size_t N) {
  std::size_t d = g.dim();
  std::vector<Subspace> out;
  out.emplace_back(1);
  for (std::size_t n = 1; n <= N; ++n) {
    WordIndex size = ipow(d, n), lower = ipow(d, n - 1);
    std::vector<SparseRow> rows;
    for (const auto& b : out.back().basis())
      for (std::size_t a = 0; a < d; ++a) {
        SparseRow left, right;
        for (const auto& [w, v] : b) {
          left.emplace_back(a * lower + w, v);
          right.emplace_back(w * d + a, v);
        }
        std::sort(right.begin(), right.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        rows.push_back(std::move(left));
        rows.push_back(std::move(right));
      }
    for (const auto& r : g.generators())
      if (r.degree() == n) rows.push_back(r.to_sparse());
    out.push_back(Subspace::span(size, rows));
  }
  return out;
}

inline Subspace ideal_slice(const GeneratorSet& g, std::size_t n) { return ideal_slices(g, n).back(); }

inline Subspace ideal_slice(const GeneratorSet& g, std::size_t n, std::size_t d) {
  if (g.dim() != d) throw std::invalid_argument("alphabet mismatch");
  return ideal_slice(g, n);
}

inline HilbertData quotient_hilbert(const GeneratorSet& g, std::size_t N, std::size_t cap = kDefaultDegreeCap) {
  require_cap(N, cap);
  auto slices = ideal_slices(g, N);
  HilbertData h{N, {}};
  for (std::size_t n = 0; n <= N; ++n) h.ranks.push_back(ipow(g.dim(), n) - slices[n].dim());
  return h;
}

inline bool ideal_contains(const TensorVector& x, const GeneratorSet& g, std::size_t cap = kDefaultDegreeCap) {
  if (x.dim() != g.dim()) throw std::invalid_argument("alphabet mismatch");
  require_cap(x.degree(), cap);
  return ideal_slice(g, x.degree()).contains(x.to_sparse());
}

inline bool check_identity_mod_ideal(const TensorVector& lhs, const TensorVector& rhs, const GeneratorSet& g,
                                     std::size_t cap = kDefaultDegreeCap) {
  if (lhs.degree() != rhs.degree()) throw std::invalid_argument("identity sides have different degrees");
  return ideal_contains(lhs - rhs, g, cap);
}

// A strict total order on letters: rank[letter] smaller means lower.
class WordOrder {
 public:
  explicit WordOrder(std::vector<std::string> names) : names_(std::move(names)) {}

  // x1 ≺ x2 ≺ ... ≺ xd
  static WordOrder standard(std::size_t d) {
    std::vector<std::string> n;
    for (std::size_t i = 1; i <= d; ++i) n.push_back("x" + std::to_string(i));
    return WordOrder(n);
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  int letter(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("letter '" + name + "' outside the alphabet");
  }

  std::vector<int> word(const std::vector<std::string>& letters) const {
    std::vector<int> w;
    for (const auto& l : letters) w.push_back(letter(l));
    return w;
  }

 private:
  std::vector<std::string> names_;
};

enum class Ordering { less, equal, greater };

// Letters are read from the right; a word that runs out first is lower.
inline Ordering colex_compare(const std::vector<int>& u, const std::vector<int>& w, const WordOrder& ord) {
  for (int l : u)
    if (l < 0 || static_cast<std::size_t>(l) >= ord.size()) throw std::invalid_argument("letter outside the alphabet");
  for (int l : w)
    if (l < 0 || static_cast<std::size_t>(l) >= ord.size()) throw std::invalid_argument("letter outside the alphabet");
  std::size_t i = u.size(), j = w.size();
  while (i > 0 && j > 0) {
    --i;
    --j;
    if (u[i] != w[j]) return u[i] < w[j] ? Ordering::less : Ordering::greater;
  }
  if (i == 0 && j == 0) return Ordering::equal;
  return i == 0 ? Ordering::less : Ordering::greater;
}

using FormalCombination = std::map<std::vector<int>, Scalar>;

inline std::vector<int> max_term(const FormalCombination& x, const WordOrder& ord) {
  const std::vector<int>* best = nullptr;
  for (const auto& [w, c] : x) {
    if (c == 0) continue;
    if (!best || colex_compare(*best, w, ord) == Ordering::less) best = &w;
  }
  if (!best) throw std::invalid_argument("maximal term of zero");
  return *best;
}

inline std::vector<int> max_term(const TensorVector& x) {
  FormalCombination f;
  for (const auto& [w, c] : x.terms()) f[word_letters(w, x.degree(), x.dim())] = c;
  return max_term(f, WordOrder::standard(x.dim()));
}

}  // namespace nichols
