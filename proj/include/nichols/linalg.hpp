#pragma once

#include <nichols/scalar.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nichols {

// Sparse vector: (index, value) pairs, strictly increasing indices, no zeros.
using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

inline SparseRow sparse_from_dense(const std::vector<Scalar>& v) {
  SparseRow r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) r.emplace_back(i, v[i]);
  return r;
}

inline std::vector<Scalar> dense_from_sparse(const SparseRow& v, std::size_t n) {
  std::vector<Scalar> d(n);
  for (const auto& [i, x] : v) d.at(i) = x;
  return d;
}

// a + s*b
inline SparseRow axpy(const SparseRow& a, const Scalar& s, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, s * b[j].second);
      ++j;
    } else {
      Scalar v = a[i].second + s * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Scalar(1));
    return m;
  }

  static SparseMatrix from_dense(const std::vector<std::vector<Scalar>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    SparseMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged dense matrix");
      m.data_[i] = sparse_from_dense(rows[i]);
    }
    return m;
  }

  // Column j of the result is columns[j].
  static SparseMatrix from_columns(std::size_t rows, const std::vector<SparseRow>& columns) {
    SparseMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
      for (const auto& [i, v] : columns[j]) {
        if (i >= rows) throw std::out_of_range("column entry outside matrix");
        m.data_[i].emplace_back(j, v);
      }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const SparseRow& row(std::size_t i) const { return data_.at(i); }
  const std::vector<SparseRow>& row_data() const { return data_; }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  Scalar get(std::size_t i, std::size_t j) const {
    check(i, j);
    const auto& r = data_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == j) return it->second;
    return 0;
  }

  void set(std::size_t i, std::size_t j, const Scalar& v) {
    check(i, j);
    auto& r = data_[i];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
    bool present = it != r.end() && it->first == j;
    if (v == 0) {
      if (present) r.erase(it);
    } else if (present) {
      it->second = v;
    } else {
      r.insert(it, {j, v});
    }
  }

  void set_row(std::size_t i, SparseRow r) {
    for (const auto& e : r)
      if (e.first >= cols_ || e.second == 0) throw std::invalid_argument("bad sparse row");
    data_.at(i) = std::move(r);
  }

  SparseRow column(std::size_t j) const {
    SparseRow c;
    for (std::size_t i = 0; i < rows_; ++i) {
      Scalar v = get(i, j);
      if (v != 0) c.emplace_back(i, v);
    }
    return c;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (const auto& [j, v] : data_[i]) t.data_[j].emplace_back(i, v);
    return t;
  }

  SparseRow apply(const SparseRow& x) const {
    SparseRow out;
    for (std::size_t i = 0; i < rows_; ++i) {
      Scalar s = 0;
      const auto& r = data_[i];
      std::size_t a = 0, b = 0;
      while (a < r.size() && b < x.size()) {
        if (r[a].first < x[b].first) ++a;
        else if (x[b].first < r[a].first) ++b;
        else s += r[a++].second * x[b++].second;
      }
      if (s != 0) out.emplace_back(i, s);
    }
    return out;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
    SparseMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      SparseRow acc;
      for (const auto& [k, v] : a.data_[i]) acc = axpy(acc, v, b.data_[k]);
      m.data_[i] = std::move(acc);
    }
    return m;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch in sum");
    SparseMatrix m(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) m.data_[i] = axpy(a.data_[i], 1, b.data_[i]);
    return m;
  }

  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch in difference");
    SparseMatrix m(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) m.data_[i] = axpy(a.data_[i], -1, b.data_[i]);
    return m;
  }

  friend SparseMatrix operator*(const Scalar& s, const SparseMatrix& a) {
    SparseMatrix m(a.rows_, a.cols_);
    if (s == 0) return m;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      m.data_[i] = a.data_[i];
      for (auto& e : m.data_[i]) e.second *= s;
    }
    return m;
  }

  bool operator==(const SparseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<SparseRow> data_;
};

namespace detail {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

// Clear denominators, divide out the content, make the leading entry positive.
inline IntRow primitive(const SparseRow& r) {
  IntRow out;
  if (r.empty()) return out;
  Integer l = 1;
  for (const auto& e : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.second.get_den_mpz_t());
  out.reserve(r.size());
  for (const auto& [j, v] : r) out.emplace_back(j, Integer(v.get_num() * (l / v.get_den())));
  Integer g = 0;
  for (const auto& e : out) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
  if (out.front().second < 0) g = -g;
  if (g != 1)
    for (auto& e : out) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
  return out;
}

inline void make_primitive(IntRow& r) {
  if (r.empty()) return;
  Integer g = 0;
  for (const auto& e : r) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g == 1) break;
  }
  if (r.front().second < 0) g = -g;
  if (g != 1)
    for (auto& e : r) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

// Cancel the leading entry of r against p (same leading column), fraction free.
inline IntRow cancel_leading(const IntRow& r, const IntRow& p) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), r.front().second.get_mpz_t(), p.front().second.get_mpz_t());
  Integer fr = p.front().second / g;
  Integer fp = r.front().second / g;
  IntRow out;
  out.reserve(r.size() + p.size());
  std::size_t i = 1, j = 1;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.emplace_back(r[i].first, fr * r[i].second);
      ++i;
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, -fp * p[j].second);
      ++j;
    } else {
      Integer v = fr * r[i].second - fp * p[j].second;
      if (v != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  return out;
}

// Row echelon form built incrementally, one bucket per pivot column.
class Echelon {
 public:
  struct Pivot {
    IntRow row;
    std::size_t origin;
  };

  void insert(IntRow r, std::size_t origin) {
    while (!r.empty()) {
      std::size_t col = r.front().first;
      auto it = pivots_.find(col);
      if (it == pivots_.end()) {
        pivots_.emplace(col, Pivot{std::move(r), origin});
        return;
      }
      std::size_t sr = bit_size(r.front().second), sp = bit_size(it->second.row.front().second);
      if (sr < sp || (sr == sp && origin < it->second.origin)) {
        std::swap(r, it->second.row);
        std::swap(origin, it->second.origin);
      }
      r = cancel_leading(r, it->second.row);
    }
  }

  std::size_t rank() const { return pivots_.size(); }
  const std::map<std::size_t, Pivot>& pivots() const { return pivots_; }

 private:
  std::map<std::size_t, Pivot> pivots_;
};

inline Echelon echelon(const std::vector<SparseRow>& rows) {
  Echelon e;
  for (std::size_t i = 0; i < rows.size(); ++i) e.insert(primitive(rows[i]), i);
  return e;
}

// Reduced row echelon form, pivots normalized to 1, rows ordered by pivot.
inline std::vector<SparseRow> reduced(const Echelon& e, std::size_t cols) {
  std::vector<std::size_t> piv;
  std::vector<SparseRow> rows;
  for (const auto& [col, p] : e.pivots()) {
    piv.push_back(col);
    SparseRow r;
    r.reserve(p.row.size());
    const Integer& lead = p.row.front().second;
    for (const auto& [j, v] : p.row) {
      Scalar q(v, lead);
      q.canonicalize();
      r.emplace_back(j, std::move(q));
    }
    rows.push_back(std::move(r));
  }
  std::vector<char> is_pivot(cols, 0);
  for (std::size_t c : piv) is_pivot[c] = 1;
  std::vector<Scalar> acc(cols);
  std::vector<char> touched(cols, 0);
  std::vector<std::size_t> support;
  for (std::size_t k = rows.size(); k-- > 0;) {
    bool needs = false;
    for (std::size_t m = 1; m < rows[k].size(); ++m)
      if (is_pivot[rows[k][m].first]) {
        needs = true;
        break;
      }
    if (!needs) continue;
    support.clear();
    for (const auto& [j, v] : rows[k]) {
      acc[j] = v;
      touched[j] = 1;
      support.push_back(j);
    }
    // later pivots are already reduced, so one sweep in increasing order suffices
    for (std::size_t m = k + 1; m < rows.size(); ++m) {
      std::size_t pc = piv[m];
      if (!touched[pc] || acc[pc] == 0) continue;
      Scalar f = acc[pc];
      for (const auto& [j, v] : rows[m]) {
        if (!touched[j]) {
          touched[j] = 1;
          support.push_back(j);
          acc[j] = 0;
        }
        acc[j] -= f * v;
      }
    }
    std::sort(support.begin(), support.end());
    SparseRow out;
    for (std::size_t j : support) {
      if (acc[j] != 0) out.emplace_back(j, acc[j]);
      acc[j] = 0;
      touched[j] = 0;
    }
    rows[k] = std::move(out);
  }
  return rows;
}

}  // namespace detail

class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<SparseRow>& rows) {
    for (const auto& r : rows)
      for (const auto& e : r)
        if (e.first >= ambient) throw std::invalid_argument("spanning vector outside the ambient space");
    Subspace s(ambient);
    s.basis_ = detail::reduced(detail::echelon(rows), ambient);
    for (const auto& r : s.basis_) s.pivots_.push_back(r.front().first);
    return s;
  }

  static Subspace full(std::size_t ambient) {
    std::vector<SparseRow> rows(ambient);
    for (std::size_t i = 0; i < ambient; ++i) rows[i].emplace_back(i, Scalar(1));
    return span(ambient, rows);
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<SparseRow>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // v minus its projection along the echelon basis; zero on every pivot column.
  SparseRow reduce(const SparseRow& v) const {
    check_bounds(v);
    std::vector<std::pair<std::size_t, Scalar>> coeffs;
    std::size_t k = 0;
    for (const auto& [j, x] : v) {
      while (k < pivots_.size() && pivots_[k] < j) ++k;
      if (k < pivots_.size() && pivots_[k] == j) coeffs.emplace_back(k, x);
    }
    if (coeffs.empty()) return v;
    std::map<std::size_t, Scalar> acc;
    for (const auto& [j, x] : v) acc[j] += x;
    for (const auto& [k2, f] : coeffs)
      for (const auto& [j, x] : basis_[k2]) acc[j] -= f * x;
    SparseRow out;
    for (auto& [j, x] : acc)
      if (x != 0) out.emplace_back(j, std::move(x));
    return out;
  }

  bool contains(const SparseRow& v) const { return reduce(v).empty(); }

  bool contains(const std::vector<Scalar>& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("dimension mismatch in membership test");
    return contains(sparse_from_dense(v));
  }

  bool contains(const Subspace& o) const {
    if (o.ambient_ != ambient_) throw std::invalid_argument("dimension mismatch in subspace comparison");
    for (const auto& r : o.basis_)
      if (!contains(r)) return false;
    return true;
  }

  Subspace sum(const Subspace& o) const {
    if (o.ambient_ != ambient_) throw std::invalid_argument("dimension mismatch in subspace sum");
    std::vector<SparseRow> rows = basis_;
    rows.insert(rows.end(), o.basis_.begin(), o.basis_.end());
    return span(ambient_, rows);
  }

  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

 private:
  void check_bounds(const SparseRow& v) const {
    if (!v.empty() && v.back().first >= ambient_) throw std::invalid_argument("dimension mismatch in membership test");
  }

  std::size_t ambient_ = 0;
  std::vector<SparseRow> basis_;
  std::vector<std::size_t> pivots_;
};

inline std::size_t rank(const SparseMatrix& m) { return detail::echelon(m.row_data()).rank(); }

inline std::size_t rank(const std::vector<SparseRow>& rows) { return detail::echelon(rows).rank(); }

// Right null space {x : m x = 0}.
inline Subspace kernel_basis(const SparseMatrix& m) {
  std::vector<SparseRow> rref = detail::reduced(detail::echelon(m.row_data()), m.cols());
  std::vector<char> is_pivot(m.cols(), 0);
  for (const auto& r : rref) is_pivot[r.front().first] = 1;
  // column f of the RREF, read off per pivot row
  std::vector<SparseRow> by_free(m.cols());
  for (const auto& r : rref)
    for (std::size_t e = 1; e < r.size(); ++e) by_free[r[e].first].emplace_back(r.front().first, -r[e].second);
  std::vector<SparseRow> vecs;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    SparseRow v = std::move(by_free[f]);
    v.emplace_back(f, Scalar(1));
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    vecs.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), vecs);
}

inline Scalar det_fraction_free(const SparseMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [j, v] : m.row(i)) a[i][j] = v;
  std::vector<std::size_t> origin(n);
  for (std::size_t i = 0; i < n; ++i) origin[i] = i;
  Scalar prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i) {
      if (a[i][k] == 0) continue;
      if (best == n || bit_size(a[i][k]) < bit_size(a[best][k]) ||
          (bit_size(a[i][k]) == bit_size(a[best][k]) && origin[i] < origin[best]))
        best = i;
    }
    if (best == n) return 0;
    if (best != k) {
      std::swap(a[best], a[k]);
      std::swap(origin[best], origin[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline SparseMatrix inverse(const SparseMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  std::size_t n = m.rows();
  std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, v] : m.row(i)) a[i][j] = v;
    a[i][n + i] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i)
      if (a[i][k] != 0 && (best == n || bit_size(a[i][k]) < bit_size(a[best][k]))) best = i;
    if (best == n) throw std::domain_error("matrix not invertible");
    std::swap(a[best], a[k]);
    Scalar piv = a[k][k];
    for (auto& x : a[k]) x /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Scalar f = a[i][k];
      for (std::size_t j = 0; j < 2 * n; ++j)
        if (a[k][j] != 0) a[i][j] -= f * a[k][j];
    }
  }
  SparseMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][n + j] != 0) inv.set(i, j, a[i][n + j]);
  return inv;
}

}  // namespace nichols
