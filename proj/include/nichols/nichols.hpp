#pragma once

#include <nichols/braiding.hpp>
#include <nichols/linalg.hpp>
#include <nichols/symmetrizer.hpp>
#include <nichols/tensor.hpp>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nichols {

inline constexpr std::size_t kDefaultDegreeCap = 6;
// Vector-only membership (no matrices) stays cheap much longer.
inline constexpr std::size_t kRelationDegreeCap = 9;

class DegreeCapError : public std::out_of_range {
 public:
  DegreeCapError(std::size_t n, std::size_t cap)
      : std::out_of_range("degree " + std::to_string(n) + " exceeds the cap " + std::to_string(cap)) {}
};

inline void require_cap(std::size_t n, std::size_t cap) {
  if (n > cap) throw DegreeCapError(n, cap);
}

// J_n(V) = ker Q_n inside the d^n-dimensional word space.
struct RelationSet {
  std::size_t degree = 0;
  Subspace kernel;
};

// ranks[n] = dim B^n(V) = rank Q_n
struct HilbertData {
  std::size_t max_degree = 0;
  std::vector<std::size_t> ranks;
};

class NicholsEngine {
 public:
  explicit NicholsEngine(const Braiding& c, std::size_t cap = kDefaultDegreeCap, unsigned jobs = 1)
      : cache_(std::make_shared<SymmetrizerCache>(c, jobs)), cap_(cap) {}

  const Braiding& braiding() const { return cache_->braiding(); }
  std::size_t cap() const { return cap_; }

  SparseMatrix symmetrizer_matrix(std::size_t n) const {
    require_cap(n, cap_);
    return SparseMatrix::from_columns(ipow(braiding().dim(), n), *cache_->columns(n));
  }

  RelationSet relations_at_degree(std::size_t n) const {
    if (n < 2) throw std::invalid_argument("relations start in degree 2");
    return {n, kernel_basis(symmetrizer_matrix(n))};
  }

  std::size_t rank_at(std::size_t n) const {
    if (n == 0) return 1;
    return rank(symmetrizer_matrix(n));
  }

  HilbertData hilbert(std::size_t N) const {
    require_cap(N, cap_);
    HilbertData h{N, {}};
    for (std::size_t n = 0; n <= N; ++n) h.ranks.push_back(rank_at(n));
    return h;
  }

 private:
  std::shared_ptr<SymmetrizerCache> cache_;
  std::size_t cap_;
};

inline RelationSet quadratic_relations(const Braiding& c) {
  require_validated(c);
  SparseMatrix m = c.matrix() + SparseMatrix::identity(c.dim() * c.dim());
  return {2, kernel_basis(m)};
}

inline RelationSet relations_at_degree(const Braiding& c, std::size_t n, std::size_t cap = kDefaultDegreeCap) {
  require_cap(n, cap);
  return NicholsEngine(c, cap).relations_at_degree(n);
}

inline HilbertData hilbert(const Braiding& c, std::size_t N, std::size_t cap = kDefaultDegreeCap) {
  require_cap(N, cap);
  return NicholsEngine(c, cap).hilbert(N);
}

namespace detail {

// All ∂_1..∂_d of x by the braided Leibniz recursion on the first letter.
inline std::vector<TensorVector> derive_all(const DualExchange& e, const TensorVector& x) {
  std::size_t d = x.dim(), n = x.degree();
  std::vector<TensorVector> out(d, TensorVector(d, n - 1));
  if (n == 1) {
    for (const auto& [w, coef] : x.terms()) out[w].add_term(0, coef);
    return out;
  }
  WordIndex tail = ipow(d, n - 1);
  std::vector<TensorVector> rest(d, TensorVector(d, n - 1));
  for (const auto& [w, coef] : x.terms()) rest[w / tail].add_term(w % tail, coef);
  WordIndex tail2 = ipow(d, n - 2);
  for (std::size_t v = 0; v < d; ++v) {
    if (rest[v].is_zero()) continue;
    out[v] += rest[v];
    std::vector<TensorVector> inner = derive_all(e, rest[v]);
    for (std::size_t i = 0; i < d; ++i)
      for (const auto& t : e.terms(i, v)) {
        if (inner[t.w].is_zero()) continue;
        for (const auto& [u, coef] : inner[t.w].terms()) out[i].add_term(t.b * tail2 + u, t.coeff * coef);
      }
  }
  return out;
}

inline void require_homogeneous_positive(const TensorVector& x, const Braiding& c) {
  if (x.dim() != c.dim()) throw std::invalid_argument("alphabet mismatch between braiding and vector");
  if (x.degree() < 1) throw std::invalid_argument("derivation needs degree at least 1");
}

}  // namespace detail

// ∂_i, i 1-based, via ∂_f(xy) = ∂_f(x)y + Σ x_i ∂_{f_i}(y).
inline TensorVector derive_left(const Braiding& c, std::size_t i, const TensorVector& x) {
  detail::require_homogeneous_positive(x, c);
  if (i < 1 || i > c.dim()) throw std::out_of_range("dual index out of range");
  return detail::derive_all(dual_exchange(c), x)[i - 1];
}

// (f^i⊗id)∘Δ_{1,n-1}
inline TensorVector derive_left_shuffle(const Braiding& c, std::size_t i, const TensorVector& x) {
  detail::require_homogeneous_positive(x, c);
  if (i < 1 || i > c.dim()) throw std::out_of_range("dual index out of range");
  std::size_t d = c.dim(), n = x.degree();
  WordIndex tail = ipow(d, n - 1);
  TensorVector y = apply_delta_left(c, x), out(d, n - 1);
  for (const auto& [w, coef] : y.terms())
    if (w / tail == i - 1) out.add_term(w % tail, coef);
  return out;
}

// (id⊗f^i)∘Δ_{n-1,1}
inline TensorVector derive_right(const Braiding& c, std::size_t i, const TensorVector& x) {
  detail::require_homogeneous_positive(x, c);
  if (i < 1 || i > c.dim()) throw std::out_of_range("dual index out of range");
  std::size_t d = c.dim(), n = x.degree();
  TensorVector y = apply_delta_right(c, x), out(d, n - 1);
  for (const auto& [w, coef] : y.terms())
    if (w % d == i - 1) out.add_term(w / d, coef);
  return out;
}

inline bool is_relation(const Braiding& c, const TensorVector& x, std::size_t cap = kRelationDegreeCap) {
  require_validated(c);
  require_cap(x.degree(), cap);
  if (x.dim() != c.dim()) throw std::invalid_argument("alphabet mismatch between braiding and vector");
  return apply_symmetrizer(c, x).is_zero();
}

// {x : ∂_i x ∈ ker Q_{n-1} for every i}, starting from ker Q_1 = 0.
inline RelationSet kernel_via_derivations(const Braiding& c, std::size_t n, std::size_t cap = kDefaultDegreeCap) {
  require_validated(c);
  require_cap(n, cap);
  if (n < 2) throw std::invalid_argument("relations start in degree 2");
  std::size_t d = c.dim();
  DualExchange e = dual_exchange(c);
  Subspace prev(d);
  for (std::size_t m = 2; m <= n; ++m) {
    WordIndex lower = ipow(d, m - 1), size = ipow(d, m);
    // coordinates of the residual modulo ker Q_{m-1}, one block per dual index
    std::vector<SparseRow> cols(size);
    for (WordIndex u = 0; u < size; ++u) {
      std::vector<TensorVector> parts = detail::derive_all(e, TensorVector::basis(d, m, u));
      SparseRow col;
      for (std::size_t i = 0; i < d; ++i) {
        SparseRow r = prev.reduce(parts[i].to_sparse());
        for (auto& [j, v] : r) col.emplace_back(i * lower + j, std::move(v));
      }
      cols[u] = std::move(col);
    }
    prev = kernel_basis(SparseMatrix::from_columns(d * lower, cols));
  }
  return {n, prev};
}

}  // namespace nichols
