#pragma once

// Slow, independent reference implementations used only by the tests.

#include <nichols/scalar.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <random>
#include <vector>

namespace oracle {

using nichols::Scalar;
using Dense = std::vector<std::vector<Scalar>>;

inline Dense zeros(std::size_t r, std::size_t c) { return Dense(r, std::vector<Scalar>(c)); }

inline Dense eye(std::size_t n) {
  Dense m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Dense mul(const Dense& a, const Dense& b) {
  Dense c = zeros(a.size(), b.empty() ? 0 : b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

inline Dense add(const Dense& a, const Dense& b) {
  Dense c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
  return c;
}

inline Dense kron(const Dense& a, const Dense& b) {
  std::size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
  Dense c = zeros(ar * br, ac * bc);
  for (std::size_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < ac; ++j)
      if (a[i][j] != 0)
        for (std::size_t k = 0; k < br; ++k)
          for (std::size_t l = 0; l < bc; ++l) c[i * br + k][j * bc + l] = a[i][j] * b[k][l];
  return c;
}

// Plain rational Gauss elimination, first nonzero pivot.
inline std::size_t rank(Dense m) {
  std::size_t r = 0, rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Scalar f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

inline Scalar cofactor_det(const Dense& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Scalar d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    Dense minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Scalar> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    Scalar s = cofactor_det(minor) * m[0][j];
    d += j % 2 ? Scalar(-s) : s;
  }
  return d;
}

inline Scalar small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  Scalar q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Dense random_dense(std::size_t r, std::size_t c, std::mt19937_64& rng, int zero_percent = 30) {
  std::uniform_int_distribution<int> pct(0, 99);
  Dense m = zeros(r, c);
  for (auto& row : m)
    for (auto& v : row)
      if (pct(rng) >= zero_percent) v = small_rational(rng);
  return m;
}

// c as a d^2 x d^2 matrix: column i*d+j holds the image of x_i x_j.
inline Dense braiding_matrix(std::size_t d, const std::function<Scalar(std::size_t, std::size_t, std::size_t, std::size_t)>& r) {
  Dense m = zeros(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) m[k * d + l][i * d + j] = r(i, j, k, l);
  return m;
}

// c acting on positions j, j+1 (1-based) of V^{⊗n}
inline Dense lift(const Dense& c, std::size_t d, std::size_t n, std::size_t j) {
  Dense left = eye(1), right = eye(1);
  for (std::size_t k = 1; k < j; ++k) left = kron(left, eye(d));
  for (std::size_t k = j + 2; k <= n; ++k) right = kron(right, eye(d));
  return kron(kron(left, c), right);
}

inline bool braid_holds(const Dense& c, std::size_t d) {
  Dense a = lift(c, d, 3, 1), b = lift(c, d, 3, 2);
  return mul(mul(a, b), a) == mul(mul(b, a), b);
}

// Σ over all permutations of the Matsumoto lift, built from bubble-sort words.
inline Dense symmetrizer(const Dense& c, std::size_t d, std::size_t n) {
  std::vector<Dense> lifts;
  for (std::size_t j = 1; j < n; ++j) lifts.push_back(lift(c, d, n, j));
  std::size_t size = 1;
  for (std::size_t k = 0; k < n; ++k) size *= d;
  Dense total = zeros(size, size);
  std::vector<int> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<int>(i);
  do {
    // bubble sort records one reduced word
    std::vector<int> a = p;
    std::vector<std::size_t> word;
    bool swapped = true;
    while (swapped) {
      swapped = false;
      for (std::size_t i = 0; i + 1 < n; ++i)
        if (a[i] > a[i + 1]) {
          std::swap(a[i], a[i + 1]);
          word.push_back(i + 1);
          swapped = true;
        }
    }
    Dense op = eye(size);
    for (std::size_t s : word) op = mul(op, lifts[s - 1]);
    total = add(total, op);
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

// Number of exponent vectors with Σ e_g deg_g = n and e_g ≤ bound_g (bound 0 = unbounded), by brute recursion.
inline std::size_t count_monomials(const std::vector<std::pair<std::size_t, std::size_t>>& gens, std::size_t n,
                                   std::size_t from = 0) {
  if (n == 0) return 1;
  if (from == gens.size()) return 0;
  auto [deg, bound] = gens[from];
  std::size_t total = 0;
  for (std::size_t e = 0; e * deg <= n; ++e) {
    if (bound && e > bound) break;
    total += count_monomials(gens, n - e * deg, from + 1);
  }
  return total;
}

// Coefficients of ∏ (1 - s^{d_k})^{-1} truncated at degree N by repeated series multiplication.
inline std::vector<long> geometric_product(const std::vector<std::size_t>& degrees, std::size_t N) {
  std::vector<long> s(N + 1, 0);
  s[0] = 1;
  for (std::size_t d : degrees) {
    std::vector<long> g(N + 1, 0), out(N + 1, 0);
    for (std::size_t k = 0; k <= N; k += d) g[k] = 1;
    for (std::size_t i = 0; i <= N; ++i)
      for (std::size_t j = 0; i + j <= N; ++j) out[i + j] += s[i] * g[j];
    s = out;
  }
  return s;
}

inline long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
