#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nichols {

// Exact rational in lowest terms, denominator positive.
using Scalar = mpq_class;
using Integer = mpz_class;

inline Scalar parse_scalar(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  auto slash = s.find('/');
  auto valid = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && part[0] == '-') i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!valid(s, true)) throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
    return Scalar(Integer(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid(num, true) || !valid(den, false))
    throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Scalar q(Integer(num), d);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Scalar& q) { return q.get_str(); }

// Pivot size heuristic: bits(num) + bits(den).
inline std::size_t bit_size(const Scalar& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

inline std::size_t bit_size(const Integer& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

inline Scalar power(const Scalar& base, unsigned long e) {
  Scalar r = 1;
  for (unsigned long i = 0; i < e; ++i) r *= base;
  return r;
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace nichols
