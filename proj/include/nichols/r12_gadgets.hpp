#pragma once

#include <nichols/braiding.hpp>
#include <nichols/linalg.hpp>
#include <nichols/nichols.hpp>
#include <nichols/params.hpp>
#include <nichols/tensor.hpp>

#include <optional>
#include <string>
#include <vector>

namespace nichols::r12 {

// i: t=1, b≠p-2q.  ii: t=-1, b≠-p.
enum class Subcase { i, ii };

inline std::string subcase_name(Subcase s) { return s == Subcase::i ? "i" : "ii"; }

inline void require_subcase(Subcase s, const ParamMap& m) {
  const Scalar &b = param(m, "b"), &p = param(m, "p"), &q = param(m, "q");
  auto t = m.find("t");
  if (s == Subcase::i) {
    if (t != m.end() && t->second != 1) throw ConstraintError("constraint t=1 violated");
    if (b == p - 2 * q) throw ConstraintError("constraint b!=p-2q violated");
  } else {
    if (t != m.end() && t->second != -1) throw ConstraintError("constraint t=-1 violated");
    if (b == -p) throw ConstraintError("constraint b!=-p violated");
  }
}

inline TensorVector x(int i) { return TensorVector::letter(3, i); }

// x_3x_1 + x_1x_3
inline TensorVector x31() { return x(3) * x(1) + x(1) * x(3); }

struct ZChain {
  Subcase subcase;
  ParamMap params;
  std::vector<TensorVector> z;
  TensorVector x31;
};

inline ZChain z_chain(Subcase s, const ParamMap& m, std::size_t n_max) {
  require_subcase(s, m);
  const Scalar &b = param(m, "b"), &p = param(m, "p"), &q = param(m, "q");
  ZChain zc{s, m, {x(2)}, x31()};
  for (std::size_t n = 1; n <= n_max; ++n) {
    const TensorVector& prev = zc.z.back();
    TensorVector head = (x(3) - Scalar(static_cast<long>(n)) * b * x(1)) * prev;
    TensorVector next(3, n + 1);
    if (s == Subcase::i) {
      Scalar coef = Scalar(factorial(n - 1)) * (q - p) * power((-b - p) / 2, n - 1);
      next = head - prev * x(3) + coef * (power(x(1), n) * x(2));
    } else if (n % 2 == 1) {
      std::size_t h = (n - 1) / 2;
      Scalar coef = Scalar(factorial(h)) * (p - q) * power(-p - b, h);
      next = head + prev * x(3) + coef * (x(1) * x(2) * power(zc.x31, h));
    } else {
      std::size_t h = (n - 2) / 2;
      Scalar coef = Scalar(factorial(h)) * (p - q) * power(-p - b, h);
      next = head - prev * x(3) - coef * (x(2) * power(zc.x31, n / 2));
    }
    zc.z.push_back(next);
  }
  return zc;
}

inline Scalar beta(Subcase s, const ParamMap& m, std::size_t n) {
  const Scalar &b = param(m, "b"), &p = param(m, "p"), &q = param(m, "q");
  Scalar N = static_cast<long>(n);
  if (s == Subcase::i) return -N * ((N + 1) / 2 * b + (N - 1) / 2 * p + q);
  if (n % 2 == 1) return -((N + 1) / 2 * b + (N - 1) / 2 * p + q);
  return -(N / 2) * (b + p);
}

// gamma_0 = 1 in both subcases.
inline Scalar gamma(Subcase s, const ParamMap& m, std::size_t n) {
  if (n == 0) return 1;
  const Scalar &b = param(m, "b"), &p = param(m, "p"), &q = param(m, "q");
  if (s == Subcase::i) return Scalar(factorial(n)) * (q - p) * power((-p - b) / 2, n - 1);
  if (n % 2 == 0) return 0;
  std::size_t h = (n - 1) / 2;
  return Scalar(factorial(h)) * (q - p) * power(-p - b, h);
}

inline std::pair<Scalar, Scalar> beta_gamma(Subcase s, const ParamMap& m, std::size_t n) {
  return {beta(s, m, n), gamma(s, m, n)};
}

// Smallest N >= 1 with beta_N = 0 (odd N in subcase ii), if any.
inline std::optional<std::size_t> vanishing_index(Subcase s, const ParamMap& m) {
  const Scalar &b = param(m, "b"), &p = param(m, "p"), &q = param(m, "q");
  if (b + p == 0) return std::nullopt;
  Scalar r = s == Subcase::i ? Scalar((p - b - 2 * q) / (b + p)) : Scalar((p - q) / (b + p));
  if (r.get_den() != 1 || r < 1) return std::nullopt;
  std::size_t v = r.get_num().get_ui();
  return s == Subcase::i ? v : 2 * v - 1;
}

inline SparseMatrix build_M(Subcase s, const ParamMap& m, std::size_t n) {
  if (n < 1) throw std::invalid_argument("M_n needs n >= 1");
  SparseMatrix M(n + 1, n + 1);
  std::vector<Scalar> bt(n + 2);
  for (std::size_t k = 1; k <= n + 1; ++k) bt[k] = beta(s, m, k);
  auto prod = [&](long lo, long hi) {
    Scalar r = 1;
    for (long k = lo; k <= hi; ++k) r *= bt[k];
    return r;
  };
  if (s == Subcase::i) {
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        Scalar P = Scalar(factorial(i)) / Scalar(factorial(i - j));
        M.set(i - 1, j, P * prod(static_cast<long>(n - i + 1), static_cast<long>(n - j)));
      }
    for (std::size_t j = 0; j <= n; ++j) M.set(n, j, gamma(s, m, n - j));
    return M;
  }
  auto even_prod = [&](std::size_t upto) {
    Scalar r = 1;
    for (std::size_t k = 1; k <= upto; ++k) r *= beta(s, m, 2 * k);
    return r;
  };
  for (std::size_t i = 1; i <= n + 1; ++i)
    for (std::size_t j = 1; j <= n + 1; ++j) {
      std::size_t l = i / 2, th = (j - 1) / 2;
      Scalar v = 0;
      if (j >= i + 2) {
        v = 0;
      } else if (j == i + 1) {
        v = even_prod(l);
      } else if (i == n + 1 && j == n + 1) {
        v = n % 2 == 0 ? 1 : -1;
      } else if (i == n + 1) {
        v = j % 2 == 1 ? gamma(s, m, n + 1 - j) : Scalar(0);
      } else if (i % 2 == 0 && j % 2 == 0) {
        v = 0;
      } else {
        Scalar tail = 1;
        for (std::size_t k = 1; k <= i - j + 1; ++k) tail *= beta(s, m, n + 2 - j - k);
        v = Scalar(binomial(l, th)) * even_prod(th) * tail;
      }
      M.set(i - 1, j - 1, v);
    }
  return M;
}

inline Scalar det_closed(Subcase s, const ParamMap& m, std::size_t n) {
  if (n < 1) throw std::invalid_argument("det M_n needs n >= 1");
  const Scalar &b = param(m, "b"), &p = param(m, "p"), &q = param(m, "q");
  if (s == Subcase::i) {
    Scalar r = Scalar(binomial(n + 1, 2)) * (p - b - 2 * q);
    for (std::size_t j = 1; j + 1 <= n; ++j) r *= Scalar(factorial(j)) * beta(s, m, j);
    return r;
  }
  if (n % 2 == 0) {
    std::size_t mm = n / 2;
    Scalar r = mm % 2 == 0 ? 1 : -1;
    for (std::size_t j = 1; j <= mm; ++j) r *= beta(s, m, 2 * j - 1) * power(beta(s, m, 2 * j), 2 * (mm - j) + 1);
    return r;
  }
  std::size_t mm = (n + 1) / 2;
  Scalar r = (mm % 2 == 0 ? 1 : -1) * Scalar(static_cast<long>(mm)) * beta(s, m, 2);
  for (std::size_t j = 1; j + 1 <= mm; ++j) r *= beta(s, m, 2 * j - 1) * power(beta(s, m, 2 * j), 2 * (mm - j));
  return r;
}

struct PropertyCheck {
  std::string name;
  std::size_t degree = 0;
  std::string status;  // holds, fails, untested (degree cap)
  bool as_corrected = false;
};

struct PropertyReport {
  Subcase subcase;
  std::vector<PropertyCheck> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (c.status == "fails") return false;
    return true;
  }
};

inline std::string sign_name(int s) { return s > 0 ? "-" : "+"; }

inline PropertyReport verify_zn_properties(const Braiding& c, Subcase s, const ParamMap& m, std::size_t n_max,
                                           std::size_t degree_cap = kRelationDegreeCap) {
  require_subcase(s, m);
  require_validated(c);
  PropertyReport rep{s, {}};
  ZChain zc = z_chain(s, m, n_max + 1);
  const auto& z = zc.z;
  auto record = [&](const std::string& name, const TensorVector& v, bool corrected = false) {
    PropertyCheck pc{name, v.degree(), "", corrected};
    if (v.degree() > degree_cap) pc.status = "untested (degree cap)";
    else pc.status = is_relation(c, v, degree_cap) ? "holds" : "fails";
    rep.checks.push_back(pc);
  };
  auto zs = [](std::size_t n) { return "z" + std::to_string(n); };
  const Scalar &b = param(m, "b"), &p = param(m, "p");

  for (std::size_t n = 1; n <= n_max; ++n) {
    record("d3(" + zs(n) + ") = 0", derive_left(c, 3, z[n]));
    TensorVector target(3, n);
    if (s == Subcase::i) target = gamma(s, m, n) * power(x(1), n);
    else if (n % 2 == 1) target = gamma(s, m, n) * (x(1) * power(zc.x31, (n - 1) / 2));
    record("d2(" + zs(n) + ") = gamma_" + std::to_string(n) + " * lead", derive_left(c, 2, z[n]) - target);
    record("d1(" + zs(n) + ") = beta_" + std::to_string(n) + " * " + zs(n - 1),
           derive_left(c, 1, z[n]) - beta(s, m, n) * z[n - 1]);
    for (int i = 1; i <= 2; ++i) {
      if (s == Subcase::i) {
        record(zs(n) + "*x" + std::to_string(i) + " - x" + std::to_string(i) + "*" + zs(n), z[n] * x(i) - x(i) * z[n]);
      } else {
        int sg = n % 2 == 1 ? 1 : -1;
        record(zs(n) + "*x" + std::to_string(i) + " " + sign_name(sg) + " x" + std::to_string(i) + "*" + zs(n),
               z[n] * x(i) - Scalar(sg) * (x(i) * z[n]));
      }
    }
    if (s == Subcase::ii) record(zs(n) + "*x31 - x31*" + zs(n), z[n] * zc.x31 - zc.x31 * z[n]);
    for (std::size_t k = 1; k < n; ++k) {
      // z_{n}z_{n-1} is checked below as a listed relation
      if (k + 1 == n && (s == Subcase::i || n % 2 == 0)) continue;
      int sg = 1;
      if (s == Subcase::ii && ((n + 1) * (k + 1)) % 2 == 1) sg = -1;
      record(zs(n) + "*" + zs(k) + " " + sign_name(sg) + " " + zs(k) + "*" + zs(n),
             z[n] * z[k] - Scalar(sg) * (z[k] * z[n]), true);
    }
  }
  if (s == Subcase::i) {
    for (std::size_t n = 0; n + 1 <= n_max; ++n)
      record(zs(n + 1) + "*" + zs(n) + " - " + zs(n) + "*" + zs(n + 1), z[n + 1] * z[n] - z[n] * z[n + 1]);
  } else {
    record("x31*x2 - x2*x31", zc.x31 * x(2) - x(2) * zc.x31);
    record("x3*x31 - x31*x3 + (p-b)*x1*x31", x(3) * zc.x31 - zc.x31 * x(3) + (p - b) * (x(1) * zc.x31));
    for (std::size_t n = 1; 2 * n <= n_max; ++n) {
      record(zs(2 * n) + "*" + zs(2 * n - 1) + " - " + zs(2 * n - 1) + "*" + zs(2 * n),
             z[2 * n] * z[2 * n - 1] - z[2 * n - 1] * z[2 * n]);
      record(zs(2 * n) + "^2", z[2 * n] * z[2 * n]);
    }
  }
  if (auto N = vanishing_index(s, m); N && *N <= n_max) {
    Scalar coef = Scalar(static_cast<long>(*N + 1)) * (b + p) / 2;
    record(zs(*N + 1) + " + (N+1)(b+p)/2*x1*" + zs(*N), z[*N + 1] + coef * (x(1) * z[*N]));
  }
  return rep;
}

}  // namespace nichols::r12
