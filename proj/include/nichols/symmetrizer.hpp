#pragma once

#include <nichols/braiding.hpp>
#include <nichols/operator.hpp>
#include <nichols/parallel.hpp>
#include <nichols/tensor.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace nichols {

// One-line notation, values 1..n.
using Permutation = std::vector<int>;

inline void require_permutation(const Permutation& p) {
  std::vector<int> s = p;
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != static_cast<int>(i) + 1) throw std::invalid_argument("not a permutation");
}

inline std::size_t inversions(const Permutation& p) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++n;
  return n;
}

// Sorting swaps in the order performed: the largest displaced value is moved right first.
inline std::vector<int> reduced_word(const Permutation& p) {
  require_permutation(p);
  std::vector<int> a = p, word;
  for (int v = static_cast<int>(a.size()); v >= 1; --v) {
    auto pos = static_cast<int>(std::find(a.begin(), a.end(), v) - a.begin());
    while (pos < v - 1) {
      std::swap(a[pos], a[pos + 1]);
      word.push_back(pos + 1);
      ++pos;
    }
  }
  return word;
}

// The operator c_{w_1} c_{w_2} ... c_{w_k}; c_{w_k} acts first.
inline TensorVector apply_word(const Braiding& c, TensorVector x, const std::vector<int>& word) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = apply_lift(c, x, static_cast<std::size_t>(*it));
  return x;
}

inline void require_validated(const Braiding& c) {
  if (!c.validated()) throw std::invalid_argument("braiding not validated");
}

inline GradedOperator symmetrizer_naive(const Braiding& c, std::size_t n) {
  require_validated(c);
  if (n == 0) throw std::invalid_argument("symmetrizer degree must be at least 1");
  std::vector<std::vector<int>> words;
  Permutation p(n);
  std::iota(p.begin(), p.end(), 1);
  do {
    words.push_back(reduced_word(p));
  } while (std::next_permutation(p.begin(), p.end()));
  return GradedOperator::from_images(c.dim(), n, [&](WordIndex w) {
    TensorVector e = TensorVector::basis(c.dim(), n, w), acc(c.dim(), n);
    for (const auto& word : words) acc += apply_word(c, e, word);
    return acc;
  });
}

// Δ_{n-1,1} = Σ_{i=1}^{n} c_{n-1} ⋯ c_i
inline TensorVector apply_delta_right(const Braiding& c, const TensorVector& x) {
  std::size_t n = x.degree();
  TensorVector acc = x;
  for (std::size_t i = 1; i < n; ++i) {
    TensorVector y = x;
    for (std::size_t j = i; j < n; ++j) y = apply_lift(c, y, j);
    acc += y;
  }
  return acc;
}

// Δ_{1,n-1} = Σ_{i=1}^{n} c_1 ⋯ c_{i-1}
inline TensorVector apply_delta_left(const Braiding& c, const TensorVector& x) {
  std::size_t n = x.degree();
  TensorVector acc = x;
  for (std::size_t i = 2; i <= n; ++i) {
    TensorVector y = x;
    for (std::size_t j = i - 1; j >= 1; --j) y = apply_lift(c, y, j);
    acc += y;
  }
  return acc;
}

inline GradedOperator delta_right(const Braiding& c, std::size_t n) {
  require_validated(c);
  if (n < 2) throw std::invalid_argument("shuffle component needs degree at least 2");
  return GradedOperator::from_images(c.dim(), n, [&](WordIndex w) {
    return apply_delta_right(c, TensorVector::basis(c.dim(), n, w));
  });
}

inline GradedOperator delta_left(const Braiding& c, std::size_t n) {
  require_validated(c);
  if (n < 2) throw std::invalid_argument("shuffle component needs degree at least 2");
  return GradedOperator::from_images(c.dim(), n, [&](WordIndex w) {
    return apply_delta_left(c, TensorVector::basis(c.dim(), n, w));
  });
}

// Q_n x through Q_n = (Q_{n-1}⊗id)∘Δ_{n-1,1}, never forming a matrix.
inline TensorVector apply_symmetrizer(const Braiding& c, const TensorVector& x) {
  require_validated(c);
  std::size_t n = x.degree(), d = c.dim();
  if (n <= 1 || x.is_zero()) return x;
  TensorVector y = apply_delta_right(c, x);
  std::vector<TensorVector> parts(d, TensorVector(d, n - 1));
  for (const auto& [w, coef] : y.terms()) parts[w % d].add_term(w / d, coef);
  TensorVector out(d, n);
  for (std::size_t a = 0; a < d; ++a) {
    if (parts[a].is_zero()) continue;
    TensorVector q = apply_symmetrizer(c, parts[a]);
    for (const auto& [w, coef] : q.terms()) out.add_term(w * d + a, coef);
  }
  return out;
}

// Memoized columns of Q_1..Q_n for one braiding; safe for concurrent readers.
class SymmetrizerCache {
 public:
  explicit SymmetrizerCache(Braiding c, unsigned jobs = 1) : c_(std::move(c)), jobs_(jobs) { require_validated(c_); }

  const Braiding& braiding() const { return c_; }

  std::shared_ptr<const std::vector<SparseRow>> columns(std::size_t n) {
    if (n == 0) throw std::invalid_argument("symmetrizer degree must be at least 1");
    std::lock_guard<std::mutex> lock(mutex_);
    return columns_locked(n);
  }

  GradedOperator op(std::size_t n) { return GradedOperator::from_columns(c_.dim(), n, *columns(n)); }

 private:
  std::shared_ptr<const std::vector<SparseRow>> columns_locked(std::size_t n) {
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    std::size_t d = c_.dim();
    WordIndex size = ipow(d, n);
    auto cols = std::make_shared<std::vector<SparseRow>>(size);
    if (n == 1) {
      for (WordIndex w = 0; w < size; ++w) (*cols)[w] = SparseRow{{static_cast<std::size_t>(w), Scalar(1)}};
    } else {
      auto prev = columns_locked(n - 1);
      parallel_for(size, jobs_, [&](std::size_t u) {
        TensorVector delta = apply_delta_right(c_, TensorVector::basis(d, n, u));
        std::map<std::size_t, Scalar> acc;
        for (const auto& [w, coef] : delta.terms()) {
          std::size_t a = w % d;
          for (const auto& [v, q] : (*prev)[w / d]) acc[v * d + a] += coef * q;
        }
        SparseRow col;
        for (auto& [v, q] : acc)
          if (q != 0) col.emplace_back(v, std::move(q));
        (*cols)[u] = std::move(col);
      });
    }
    cache_.emplace(n, cols);
    return cols;
  }

  Braiding c_;
  unsigned jobs_;
  std::mutex mutex_;
  std::map<std::size_t, std::shared_ptr<const std::vector<SparseRow>>> cache_;
};

inline GradedOperator symmetrizer(const Braiding& c, std::size_t n, unsigned jobs = 1) {
  SymmetrizerCache cache(c, jobs);
  return cache.op(n);
}

}  // namespace nichols
