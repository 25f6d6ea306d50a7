#pragma once

#include <nichols/linalg.hpp>
#include <nichols/scalar.hpp>

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nichols {

// Words of length n over {0..d-1} are stored as base-d integers, first letter most significant.
using WordIndex = std::uint64_t;

inline WordIndex ipow(std::size_t d, std::size_t n) {
  WordIndex r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= d;
  return r;
}

inline std::vector<int> word_letters(WordIndex w, std::size_t n, std::size_t d) {
  std::vector<int> out(n);
  for (std::size_t i = n; i-- > 0;) {
    out[i] = static_cast<int>(w % d);
    w /= d;
  }
  return out;
}

inline WordIndex word_index(const std::vector<int>& letters, std::size_t d) {
  WordIndex w = 0;
  for (int l : letters) {
    if (l < 0 || static_cast<std::size_t>(l) >= d) throw std::out_of_range("letter outside alphabet");
    w = w * d + static_cast<WordIndex>(l);
  }
  return w;
}

// Homogeneous element of V^{⊗n}; zero coefficients are never stored.
class TensorVector {
 public:
  using Terms = std::map<WordIndex, Scalar>;

  TensorVector() = default;
  TensorVector(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {
    if (dim == 0) throw std::invalid_argument("alphabet must be nonempty");
  }

  // x_i, 1-based.
  static TensorVector letter(std::size_t dim, int i) { return word(dim, {i}); }

  // 1-based letters.
  static TensorVector word(std::size_t dim, const std::vector<int>& letters, const Scalar& coeff = 1) {
    TensorVector v(dim, letters.size());
    std::vector<int> zero_based;
    for (int l : letters) zero_based.push_back(l - 1);
    Scalar c = coeff;
    c.canonicalize();
    v.add_term(word_index(zero_based, dim), c);
    return v;
  }

  static TensorVector unit(std::size_t dim) {
    TensorVector v(dim, 0);
    v.add_term(0, 1);
    return v;
  }

  static TensorVector basis(std::size_t dim, std::size_t degree, WordIndex w) {
    TensorVector v(dim, degree);
    v.add_term(w, 1);
    return v;
  }

  static TensorVector from_sparse(std::size_t dim, std::size_t degree, const SparseRow& r) {
    TensorVector v(dim, degree);
    for (const auto& [i, x] : r) v.add_term(i, x);
    return v;
  }

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  WordIndex space_dim() const { return ipow(dim_, degree_); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coeff(WordIndex w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(WordIndex w, const Scalar& c) {
    if (w >= space_dim()) throw std::out_of_range("word index outside V^n");
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  SparseRow to_sparse() const {
    SparseRow r;
    r.reserve(terms_.size());
    for (const auto& [w, c] : terms_) r.emplace_back(static_cast<std::size_t>(w), c);
    return r;
  }

  TensorVector& operator+=(const TensorVector& o) {
    check_compatible(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }

  TensorVector& operator-=(const TensorVector& o) {
    check_compatible(o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }

  TensorVector& operator*=(const Scalar& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= s;
    return *this;
  }

  friend TensorVector operator+(TensorVector a, const TensorVector& b) { return a += b; }
  friend TensorVector operator-(TensorVector a, const TensorVector& b) { return a -= b; }
  friend TensorVector operator-(TensorVector a) { return a *= Scalar(-1); }
  friend TensorVector operator*(const Scalar& s, TensorVector a) { return a *= s; }
  friend TensorVector operator*(TensorVector a, const Scalar& s) { return a *= s; }

  // Product in T(V): concatenation of words.
  friend TensorVector operator*(const TensorVector& a, const TensorVector& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("alphabet mismatch in product");
    TensorVector r(a.dim_, a.degree_ + b.degree_);
    WordIndex shift = ipow(a.dim_, b.degree_);
    for (const auto& [u, cu] : a.terms_)
      for (const auto& [w, cw] : b.terms_) r.add_term(u * shift + w, cu * cw);
    return r;
  }

  bool operator==(const TensorVector& o) const {
    return dim_ == o.dim_ && degree_ == o.degree_ && terms_ == o.terms_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      Scalar mag = abs(c);
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      auto letters = word_letters(w, degree_, dim_);
      if (letters.empty()) {
        os << mag.get_str();
        continue;
      }
      if (mag != 1) os << mag.get_str() << "*";
      for (std::size_t i = 0; i < letters.size(); ++i) os << (i ? "*" : "") << "x" << letters[i] + 1;
    }
    return os.str();
  }

 private:
  void check_compatible(const TensorVector& o) const {
    if (dim_ != o.dim_ || degree_ != o.degree_) throw std::invalid_argument("non-homogeneous combination");
  }

  std::size_t dim_ = 1;
  std::size_t degree_ = 0;
  Terms terms_;
};

inline TensorVector power(const TensorVector& x, std::size_t k) {
  TensorVector r = TensorVector::unit(x.dim());
  for (std::size_t i = 0; i < k; ++i) r = r * x;
  return r;
}

// Grammar: sums of terms like `3/2*x3*x1`, `-x1^2`, `x2*x2`; letters x1..x9.
inline TensorVector parse_tensor(std::string_view text, std::size_t dim) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw std::invalid_argument("parse error at column " + std::to_string(pos + 1) + ": " + msg);
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_rational = [&]() -> Scalar {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      std::size_t dstart = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (dstart == pos) fail("missing denominator");
    }
    return parse_scalar(text.substr(start, pos - start));
  };

  bool have = false;
  TensorVector total;
  skip();
  if (pos == text.size()) fail("empty expression");
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    Scalar coeff = sign;
    std::vector<int> letters;
    bool any_factor = false;
    while (true) {
      skip();
      if (pos >= text.size()) fail("expected a factor");
      char ch = text[pos];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        coeff *= read_rational();
      } else if (ch == 'x') {
        ++pos;
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected letter index");
        int idx = text[pos++] - '0';
        if (idx < 1 || static_cast<std::size_t>(idx) > dim) fail("letter x" + std::to_string(idx) + " outside alphabet");
        int times = 1;
        skip();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip();
          std::size_t start = pos;
          while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
          if (start == pos) fail("expected exponent");
          times = std::stoi(std::string(text.substr(start, pos - start)));
        }
        for (int t = 0; t < times; ++t) letters.push_back(idx);
      } else {
        fail(std::string("unexpected character '") + ch + "'");
      }
      any_factor = true;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any_factor) fail("empty term");
    TensorVector term = TensorVector::word(dim, letters, coeff);
    if (!have) {
      total = term;
      have = true;
    } else {
      if (term.degree() != total.degree()) fail("non-homogeneous expression");
      total += term;
    }
  }
  return total;
}

}  // namespace nichols
