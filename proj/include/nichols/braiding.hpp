#pragma once

#include <nichols/linalg.hpp>
#include <nichols/operator.hpp>
#include <nichols/tensor.hpp>

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nichols {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// c(x_i⊗x_j) = Σ r^{ij}_{kl} x_k⊗x_l. Indices are 0-based in the API.
class Braiding {
 public:
  using Image = std::vector<std::pair<std::size_t, Scalar>>;

  Braiding() = default;
  Braiding(std::size_t dim, std::vector<Scalar> coeffs) : dim_(dim), r_(std::move(coeffs)) {
    if (dim == 0) throw std::invalid_argument("braiding dimension must be positive");
    if (r_.size() != dim * dim * dim * dim) throw std::invalid_argument("braiding needs d^4 coefficients");
    build_images();
  }

  // m has rows (k,l) and columns (i,j), both flattened as first*d + second.
  static Braiding from_matrix(std::size_t dim, const SparseMatrix& m) {
    std::size_t d2 = dim * dim;
    if (m.rows() != d2 || m.cols() != d2) throw std::invalid_argument("braiding matrix must be d^2 x d^2");
    std::vector<Scalar> r(d2 * d2);
    for (std::size_t row = 0; row < d2; ++row)
      for (const auto& [col, v] : m.row(row)) r[col * d2 + row] = v;
    return {dim, std::move(r)};
  }

  static Braiding flip(std::size_t dim) {
    std::vector<Scalar> r(dim * dim * dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) r[((i * dim + j) * dim + j) * dim + i] = 1;
    return {dim, std::move(r)};
  }

  static Braiding identity(std::size_t dim) {
    std::vector<Scalar> r(dim * dim * dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) r[((i * dim + j) * dim + i) * dim + j] = 1;
    return {dim, std::move(r)};
  }

  // c(x_i⊗x_j) = q[i][j] x_j⊗x_i
  static Braiding diagonal(const std::vector<std::vector<Scalar>>& q) {
    std::size_t dim = q.size();
    std::vector<Scalar> r(dim * dim * dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) r[((i * dim + j) * dim + j) * dim + i] = q[i].at(j);
    return {dim, std::move(r)};
  }

  std::size_t dim() const { return dim_; }
  const std::vector<Scalar>& coeffs() const { return r_; }

  const Scalar& r(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return r_.at(((i * dim_ + j) * dim_ + k) * dim_ + l);
  }

  // Image of the basis pair i*d+j as (k*d+l, coefficient) terms.
  const Image& image(std::size_t pair) const { return images_.at(pair); }

  SparseMatrix matrix() const {
    std::size_t d2 = dim_ * dim_;
    std::vector<SparseRow> cols(d2);
    for (std::size_t p = 0; p < d2; ++p) cols[p] = images_[p];
    return SparseMatrix::from_columns(d2, cols);
  }

  bool validated() const { return validated_; }

  bool operator==(const Braiding& o) const { return dim_ == o.dim_ && r_ == o.r_; }

 private:
  friend Braiding validate(Braiding c);

  void build_images() {
    std::size_t d2 = dim_ * dim_;
    images_.assign(d2, {});
    for (std::size_t p = 0; p < d2; ++p)
      for (std::size_t q = 0; q < d2; ++q)
        if (r_[p * d2 + q] != 0) images_[p].emplace_back(q, r_[p * d2 + q]);
  }

  std::size_t dim_ = 1;
  std::vector<Scalar> r_{Scalar(1)};
  std::vector<Image> images_{Image{{0, Scalar(1)}}};
  bool validated_ = false;
};

// c acting on positions j, j+1 (1-based) of every word.
inline TensorVector apply_lift(const Braiding& c, const TensorVector& x, std::size_t j) {
  std::size_t n = x.degree(), d = c.dim();
  if (x.dim() != d) throw std::invalid_argument("alphabet mismatch between braiding and vector");
  if (j < 1 || j + 1 > n) throw std::out_of_range("lift position out of range");
  WordIndex s = ipow(d, n - j - 1), dd = d * d;
  TensorVector out(d, n);
  for (const auto& [w, coef] : x.terms()) {
    WordIndex suffix = w % s;
    WordIndex pair = (w / s) % dd;
    WordIndex prefix = w / (s * dd);
    for (const auto& [kl, r] : c.image(pair)) out.add_term((prefix * dd + kl) * s + suffix, coef * r);
  }
  return out;
}

inline GradedOperator lift(const Braiding& c, std::size_t n, std::size_t j) {
  if (j < 1 || j + 1 > n) throw std::out_of_range("lift position out of range");
  return GradedOperator::from_images(c.dim(), n, [&](WordIndex w) {
    return apply_lift(c, TensorVector::basis(c.dim(), n, w), j);
  });
}

// First basis tensor x_i⊗x_j⊗x_k (1-based) on which the two sides differ.
inline std::optional<std::array<int, 3>> braid_violation(const Braiding& c) {
  std::size_t d = c.dim();
  for (WordIndex w = 0; w < ipow(d, 3); ++w) {
    TensorVector e = TensorVector::basis(d, 3, w);
    TensorVector lhs = apply_lift(c, apply_lift(c, apply_lift(c, e, 1), 2), 1);
    TensorVector rhs = apply_lift(c, apply_lift(c, apply_lift(c, e, 2), 1), 2);
    if (!(lhs == rhs)) {
      auto l = word_letters(w, 3, d);
      return std::array<int, 3>{l[0] + 1, l[1] + 1, l[2] + 1};
    }
  }
  return std::nullopt;
}

inline bool check_braid_equation(const Braiding& c) { return !braid_violation(c).has_value(); }

inline Braiding validate(Braiding c) {
  if (auto v = braid_violation(c)) {
    std::ostringstream os;
    os << "braid equation fails on x" << (*v)[0] << "⊗x" << (*v)[1] << "⊗x" << (*v)[2];
    throw std::domain_error(os.str());
  }
  c.validated_ = true;
  return c;
}

// R_{ab} on legs a<b of V^{⊗3}, legs 1-based.
inline TensorVector apply_on_legs(const Braiding& R, const TensorVector& x, int a, int b) {
  std::size_t d = R.dim();
  TensorVector out(d, 3);
  for (const auto& [w, coef] : x.terms()) {
    auto l = word_letters(w, 3, d);
    std::size_t pair = l[a - 1] * d + l[b - 1];
    for (const auto& [kl, r] : R.image(pair)) {
      auto m = l;
      m[a - 1] = static_cast<int>(kl / d);
      m[b - 1] = static_cast<int>(kl % d);
      out.add_term(word_index(m, d), coef * r);
    }
  }
  return out;
}

inline bool check_qybe(const Braiding& R) {
  std::size_t d = R.dim();
  for (WordIndex w = 0; w < ipow(d, 3); ++w) {
    TensorVector e = TensorVector::basis(d, 3, w);
    TensorVector lhs = apply_on_legs(R, apply_on_legs(R, apply_on_legs(R, e, 2, 3), 1, 3), 1, 2);
    TensorVector rhs = apply_on_legs(R, apply_on_legs(R, apply_on_legs(R, e, 1, 2), 1, 3), 2, 3);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

// τ∘c
inline Braiding compose_flip(const Braiding& c) {
  std::size_t d = c.dim();
  std::vector<Scalar> r(d * d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) r[((i * d + j) * d + k) * d + l] = c.r(i, j, l, k);
  return {d, std::move(r)};
}

inline Braiding inverse(const Braiding& c) {
  SparseMatrix inv;
  try {
    inv = inverse(c.matrix());
  } catch (const std::domain_error&) {
    throw std::domain_error("braiding not invertible");
  }
  return Braiding::from_matrix(c.dim(), inv);
}

// Matrix of c♭: V*⊗V → V⊗V*, column a*d+b for f^a⊗x_b, row l*d+i for x_l⊗f^i.
inline std::pair<SparseMatrix, bool> rigidity(const Braiding& c) {
  std::size_t d = c.dim();
  SparseMatrix m(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t l = 0; l < d; ++l) {
          const Scalar& v = c.r(b, i, a, l);
          if (v != 0) m.set(l * d + i, a * d + b, v);
        }
  bool bijective = rank(m) == d * d;
  return {std::move(m), bijective};
}

// E(f^j⊗x_v) = Σ_{b,w} e^{jv}_{bw} x_b⊗f^w with e^{jv}_{bw} = r^{vw}_{jb}.
class DualExchange {
 public:
  explicit DualExchange(const Braiding& c) : dim_(c.dim()), e_(dim_ * dim_ * dim_ * dim_) {
    std::size_t d = dim_;
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t v = 0; v < d; ++v)
        for (std::size_t b = 0; b < d; ++b)
          for (std::size_t w = 0; w < d; ++w) {
            e_[((j * d + v) * d + b) * d + w] = c.r(v, w, j, b);
            if (c.r(v, w, j, b) != 0) terms_[(j * d + v)].emplace_back(b, w, c.r(v, w, j, b));
          }
  }

  struct Term {
    Term(std::size_t b_, std::size_t w_, Scalar c_) : b(b_), w(w_), coeff(std::move(c_)) {}
    std::size_t b, w;
    Scalar coeff;
  };

  std::size_t dim() const { return dim_; }
  const Scalar& e(std::size_t j, std::size_t v, std::size_t b, std::size_t w) const {
    return e_.at(((j * dim_ + v) * dim_ + b) * dim_ + w);
  }
  // Nonzero terms of E(f^j⊗x_v).
  const std::vector<Term>& terms(std::size_t j, std::size_t v) const {
    static const std::vector<Term> empty;
    auto it = terms_.find(j * dim_ + v);
    return it == terms_.end() ? empty : it->second;
  }

 private:
  std::size_t dim_;
  std::vector<Scalar> e_;
  std::map<std::size_t, std::vector<Term>> terms_;
};

inline DualExchange dual_exchange(const Braiding& c) { return DualExchange(c); }

// Text format: `dim d` then lines `i j k l num/den` (1-based) for nonzero r^{ij}_{kl}.
inline Braiding parse_braiding(std::istream& in) {
  std::string line;
  std::size_t lineno = 0, dim = 0;
  std::vector<Scalar> r;
  std::vector<char> seen;
  bool have_dim = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!have_dim) {
      std::string num, extra;
      if (first != "dim" || !(ls >> num) || (ls >> extra)) throw ParseError(lineno, "expected `dim d`");
      try {
        std::size_t used = 0;
        long v = std::stol(num, &used);
        if (used != num.size() || v < 1 || v > 9) throw std::invalid_argument("range");
        dim = static_cast<std::size_t>(v);
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad dimension '" + num + "'");
      }
      r.assign(dim * dim * dim * dim, Scalar(0));
      seen.assign(r.size(), 0);
      have_dim = true;
      continue;
    }
    std::vector<std::string> tok{first};
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.size() != 5) throw ParseError(lineno, "expected `i j k l value`");
    std::size_t idx[4];
    for (int m = 0; m < 4; ++m) {
      std::size_t used = 0;
      long v = -1;
      try {
        v = std::stol(tok[m], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok[m].size() || v < 1 || static_cast<std::size_t>(v) > dim)
        throw ParseError(lineno, "index '" + tok[m] + "' outside 1.." + std::to_string(dim));
      idx[m] = static_cast<std::size_t>(v - 1);
    }
    Scalar value;
    try {
      value = parse_scalar(tok[4]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    std::size_t slot = ((idx[0] * dim + idx[1]) * dim + idx[2]) * dim + idx[3];
    if (seen[slot]) throw ParseError(lineno, "duplicate entry");
    seen[slot] = 1;
    r[slot] = value;
  }
  if (!have_dim) throw ParseError(lineno + 1, "missing `dim d` header");
  return {dim, std::move(r)};
}

inline Braiding parse_braiding(const std::string& text) {
  std::istringstream in(text);
  return parse_braiding(in);
}

inline std::string format_braiding(const Braiding& c) {
  std::ostringstream os;
  std::size_t d = c.dim();
  os << "dim " << d << "\n";
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l)
          if (c.r(i, j, k, l) != 0)
            os << i + 1 << " " << j + 1 << " " << k + 1 << " " << l + 1 << " " << c.r(i, j, k, l).get_str() << "\n";
  return os.str();
}

}  // namespace nichols
