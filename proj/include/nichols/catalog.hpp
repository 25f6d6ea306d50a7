#pragma once

#include <nichols/braiding.hpp>
#include <nichols/params.hpp>
#include <nichols/r12_gadgets.hpp>
#include <nichols/tensor.hpp>

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace nichols {

class TranscriptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BasisKind { B0, B1, B3, Binf, BN3, Btilde_inf, Btilde };

struct BasisDescriptor {
  BasisKind kind = BasisKind::B0;
  std::size_t N = 0;  // BN3 and Btilde only

  std::string name() const {
    switch (kind) {
      case BasisKind::B0: return "B0";
      case BasisKind::B1: return "B1";
      case BasisKind::B3: return "B3";
      case BasisKind::Binf: return "Binf";
      case BasisKind::BN3: return "BN3(" + std::to_string(N) + ")";
      case BasisKind::Btilde_inf: return "Btilde_inf";
      case BasisKind::Btilde: return "Btilde(" + std::to_string(N) + ")";
    }
    return "?";
  }
};

// Monomials of total degree n; deg z_k = k+1, deg x31 = 2.
inline std::size_t pbw_count(const BasisDescriptor& b, std::size_t n) {
  struct Gen {
    std::size_t degree;
    std::size_t max_exp;  // 0 means unbounded
  };
  std::vector<Gen> gens;
  bool x12_bounded = b.kind == BasisKind::B0 || b.kind == BasisKind::B1 || b.kind == BasisKind::Btilde_inf ||
                     b.kind == BasisKind::Btilde;
  gens.push_back({1, x12_bounded ? 1u : 0u});
  gens.push_back({1, x12_bounded ? 1u : 0u});
  gens.push_back({1, b.kind == BasisKind::B0 ? 1u : 0u});
  std::size_t zmax = 0;
  if (b.kind == BasisKind::Binf || b.kind == BasisKind::Btilde_inf) zmax = n;
  if (b.kind == BasisKind::BN3 || b.kind == BasisKind::Btilde) zmax = b.N;
  bool tilde = b.kind == BasisKind::Btilde_inf || b.kind == BasisKind::Btilde;
  if (tilde) gens.push_back({2, 0});
  for (std::size_t k = 1; k <= zmax; ++k) gens.push_back({k + 1, tilde && k % 2 == 0 ? 1u : 0u});
  std::vector<std::size_t> ways(n + 1, 0);
  ways[0] = 1;
  for (const auto& g : gens) {
    std::vector<std::size_t> next(n + 1, 0);
    for (std::size_t total = 0; total <= n; ++total) {
      if (!ways[total]) continue;
      for (std::size_t e = 0; total + e * g.degree <= n; ++e) {
        if (g.max_exp && e > g.max_exp) break;
        next[total + e * g.degree] += ways[total];
      }
    }
    ways = std::move(next);
  }
  return ways[n];
}

struct ExpectedOutcome {
  bool covered = false;
  std::string family;
  std::string row;
  std::string note;
  std::vector<TensorVector> generators;
  std::size_t quadratic_count = 0;
  std::optional<BasisDescriptor> basis;
  std::optional<std::size_t> finite_dimension;
  std::string growth;
  std::vector<std::string> flags;
};

struct TableRow {
  std::string family;
  std::string id;
  std::string conditions;
  // Empty when the parameters satisfy the row, else the first violated condition.
  std::function<std::optional<std::string>(const ParamMap&)> violation;
  // Fills the parameters not already pinned.
  std::function<void(ParamMap&, std::mt19937_64&)> sample;
  std::function<std::vector<TensorVector>(const ParamMap&, std::size_t max_degree)> generators;
  std::function<BasisDescriptor(const ParamMap&)> basis;
  std::vector<std::string> flags;
};

struct FamilyInfo {
  std::string id;
  std::vector<std::string> params;
  std::string conditions;
  std::vector<std::string> rows;
};

namespace catalog_detail {

using Entries = std::vector<std::vector<Scalar>>;  // displayed 9x9, unlisted = 0

// Displayed row (k,l) in lexicographic order, column c ↦ (i,j) = (c mod 3, c div 3).
inline std::vector<Scalar> from_display(const Entries& rows, const Scalar& scale) {
  std::vector<Scalar> r(81);
  for (std::size_t row = 0; row < 9; ++row)
    for (std::size_t col = 0; col < 9; ++col) {
      std::size_t k = row / 3, l = row % 3, i = col % 3, j = col / 3;
      r[((i * 3 + j) * 3 + k) * 3 + l] = scale * rows[row][col];
    }
  return r;
}

inline Entries diagonal_display() {
  Entries e(9, std::vector<Scalar>(9));
  for (std::size_t i = 0; i < 9; ++i) e[i][i] = 1;
  return e;
}

inline void put(Entries& e, std::size_t row, std::size_t col, const Scalar& v) { e[row - 1][col - 1] = v; }

inline void put_row(Entries& e, std::size_t row, const std::vector<Scalar>& v) { e[row - 1] = v; }

inline Entries display(const std::string& fam, const ParamMap& m) {
  auto P = [&](const char* n) -> const Scalar& { return param(m, n); };
  Entries e = diagonal_display();
  if (fam == "R1.1") {
    const Scalar &a = P("a"), &b = P("b"), &p = P("p");
    put_row(e, 1, {1, 0, a, 0, 0, 0, -a, 0, -a * b});
    put_row(e, 2, {0, 1, 0, 0, 0, a - b, 0, -a, p});
    put(e, 3, 9, -b);
    put(e, 4, 6, a), put(e, 4, 8, b - a), put(e, 4, 9, -p);
    put(e, 7, 9, b);
  } else if (fam == "R1.2") {
    const Scalar &b = P("b"), &p = P("p"), &q = P("q"), &k = P("k"), &a = P("a");
    put_row(e, 1, {1, 0, b, 0, 0, 0, p, 0, a});
    put(e, 2, 6, p - q), put(e, 2, 8, q), put(e, 2, 9, k);
    put(e, 3, 9, p);
    put(e, 4, 6, b), put(e, 4, 9, -k);
    put(e, 7, 9, b);
  } else if (fam == "R1.3") {
    const Scalar &a = P("a"), &b = P("b"), &p = P("p"), &q = P("q");
    put_row(e, 1, {1, 0, a, 0, 0, 0, -a, 0, -a * b});
    put(e, 2, 8, -b), put(e, 2, 9, -p);
    put(e, 3, 9, -b);
    put(e, 4, 6, b), put(e, 4, 9, p);
    put(e, 5, 9, q);
    put(e, 7, 9, b);
  } else if (fam == "R1.4") {
    const Scalar &a = P("a"), &b = P("b"), &p = P("p");
    put_row(e, 1, {1, 0, a, 0, 0, 0, -a, 0, -a * b});
    put(e, 2, 8, a - 2 * b), put(e, 2, 9, p);
    put(e, 3, 9, -b);
    put(e, 4, 6, 2 * b - a);
    put(e, 7, 9, b);
  } else if (fam == "R1.5") {
    const Scalar &l = P("l"), &q = P("q"), &k = P("k"), &p = P("p"), &a = P("a"), &b = P("b");
    put_row(e, 1, {1, l, 0, -l, -l * l, l * q - k, p, k, a});
    put(e, 2, 5, -l), put(e, 2, 8, q), put(e, 2, 9, b);
    put(e, 3, 6, -l), put(e, 3, 9, p);
    put(e, 4, 5, l), put(e, 4, 8, p - q), put(e, 4, 9, -b);
    put(e, 7, 8, l);
  } else if (fam == "R1.6") {
    const Scalar &a = P("a"), &p = P("p"), &b = P("b"), &k = P("k"), &q = P("q");
    put_row(e, 1, {1, a, p, -a, -a * b, -(2 * p * a + k), -p, k, -p * q});
    put(e, 2, 5, -b), put(e, 2, 8, -p);
    put(e, 3, 6, -a), put(e, 3, 9, -q);
    put(e, 4, 5, b), put(e, 4, 6, p);
    put(e, 7, 8, a), put(e, 7, 9, q);
  } else if (fam == "R1.7") {
    const Scalar &k = P("k"), &p = P("p"), &l = P("l"), &d = P("d"), &a = P("a"), &q = P("q"), &b = P("b");
    put_row(e, 1, {1, k, p, -k, -k * l, d, a, k * (a - q) - d, b});
    put(e, 2, 5, -l), put(e, 2, 6, p - q), put(e, 2, 8, a);
    put(e, 3, 6, -k), put(e, 3, 9, a);
    put(e, 4, 5, l), put(e, 4, 6, q);
    put(e, 7, 8, k), put(e, 7, 9, p);
  } else if (fam == "R1.8") {
    const Scalar &a = P("a"), &q = P("q"), &b = P("b"), &p = P("p");
    put_row(e, 1, {1, a, q, -a, -a * a, -b, -q, b, a * p});
    put(e, 2, 5, -a), put(e, 2, 6, q), put(e, 2, 9, p);
    put(e, 3, 6, -a);
    put(e, 4, 5, a), put(e, 4, 8, -q), put(e, 4, 9, -p);
    put(e, 7, 8, a);
  } else if (fam == "R1.9") {
    const Scalar &a = P("a"), &b = P("b"), &p = P("p"), &q = P("q");
    put_row(e, 1, {1, 1, 0, -1, -1, a, b, b - a, p});
    put_row(e, 2, {0, 1, 1, 0, -1, -1, 0, b, b - q});
    put(e, 3, 6, -1), put(e, 3, 9, b);
    put(e, 4, 5, 1), put(e, 4, 7, -1), put(e, 4, 8, -1), put(e, 4, 9, q);
    put(e, 5, 6, 1), put(e, 5, 8, -1), put(e, 5, 9, -1);
    put(e, 6, 9, -1);
    put(e, 7, 8, 1);
    put(e, 8, 9, 1);
  } else if (fam == "R1.10") {
    const Scalar& a = P("a");
    // r^{33}_{11} = -4a^2(a+7): the braid equation forces the extra factor a
    put_row(e, 1, {1, 2, 0, -2, -4 * a, 8 * a, 4, 0, -4 * a * a * (a + 7)});
    put_row(e, 2, {0, 1, 2, 0, -2 * a, 4 - 6 * a - 2 * a * a, 0, 2 * a * (a + 1), 6 * a * (a + 2) * (a - 1)});
    put(e, 3, 6, 2 - 4 * a), put(e, 3, 9, -4 * a * (1 - 2 * a));
    put(e, 4, 5, 2 * a), put(e, 4, 6, -2 * a * (1 - a)), put(e, 4, 7, -2), put(e, 4, 8, -2 * a * (a + 1));
    put(e, 4, 9, -2 * a * (1 + 3 * a) * (a - 2));
    put(e, 5, 6, 2 * a), put(e, 5, 8, -2 * a), put(e, 5, 9, 4 * a * (1 - 2 * a));
    put(e, 6, 9, 2 - 4 * a);
    put(e, 7, 8, 4 * a - 2), put(e, 7, 9, 4 * (1 - 2 * a) * (1 - a));
    put(e, 8, 9, 4 * a - 2);
  } else {
    throw std::invalid_argument("unknown family '" + fam + "'");
  }
  return e;
}

inline const std::map<std::string, std::vector<std::string>>& family_params() {
  static const std::map<std::string, std::vector<std::string>> m = {
      {"R1.1", {"t", "a", "b", "p"}},
      {"R1.2", {"t", "b", "p", "q", "k", "a"}},
      {"R1.3", {"t", "a", "b", "p", "q"}},
      {"R1.4", {"t", "a", "b", "p"}},
      {"R1.5", {"t", "l", "q", "k", "p", "a", "b"}},
      {"R1.6", {"t", "a", "p", "b", "k", "q"}},
      {"R1.7", {"t", "k", "p", "l", "d", "a", "q", "b"}},
      {"R1.8", {"t", "a", "q", "b", "p"}},
      {"R1.9", {"t", "a", "b", "p", "q"}},
      {"R1.10", {"t", "a"}},
  };
  return m;
}

inline TensorVector x(int i) { return TensorVector::letter(3, i); }
inline TensorVector xx(int i, int j) { return x(i) * x(j); }

using Gens = std::vector<TensorVector>;

inline std::optional<std::string> need(bool ok, const std::string& what) {
  if (ok) return std::nullopt;
  return "constraint " + what + " violated";
}

inline std::string str(const Scalar& q) { return q.get_str(); }

}  // namespace catalog_detail

inline const std::vector<std::string>& family_ids() {
  static const std::vector<std::string> ids = {"R1.1", "R1.2", "R1.3", "R1.4", "R1.5",
                                               "R1.6", "R1.7", "R1.8", "R1.9", "R1.10"};
  return ids;
}

inline const std::vector<std::string>& family_param_names(const std::string& family) {
  const auto& m = catalog_detail::family_params();
  auto it = m.find(family);
  if (it == m.end()) throw std::invalid_argument("unknown family '" + family + "'");
  return it->second;
}

inline void check_param_names(const std::string& family, const ParamMap& m) {
  const auto& names = family_param_names(family);
  for (const auto& [k, v] : m)
    if (std::find(names.begin(), names.end(), k) == names.end())
      throw ConstraintError("parameter '" + k + "' is not used by " + family);
  for (const auto& n : names)
    if (!m.count(n)) throw ConstraintError("missing parameter '" + n + "' for " + family);
}

inline Braiding build_unchecked(const std::string& family, const ParamMap& m) {
  check_param_names(family, m);
  const Scalar& t = param(m, "t");
  if (t == 0) throw ConstraintError("constraint t!=0 violated");
  return Braiding(3, catalog_detail::from_display(catalog_detail::display(family, m), t));
}

inline Braiding build(const std::string& family, const ParamMap& m) {
  Braiding c = build_unchecked(family, m);
  try {
    return validate(c);
  } catch (const std::domain_error& e) {
    throw TranscriptionError(family + " at " + format_params(m) + ": " + e.what());
  }
}

inline const std::vector<TableRow>& table_rows() {
  using namespace catalog_detail;
  static const std::vector<TableRow> rows = [] {
    std::vector<TableRow> R;
    auto draw = [](ParamMap& m, std::mt19937_64& rng, const std::string& fam) {
      for (const auto& n : family_param_names(fam))
        if (!m.count(n)) m[n] = draw_rational(rng);
    };
    auto basis_of = [](BasisKind k) { return [k](const ParamMap&) { return BasisDescriptor{k, 0}; }; };
    auto t_is = [](long v) {
      return [v](const ParamMap& m) { return need(param(m, "t") == v, "t=" + std::to_string(v)); };
    };
    auto both = [](auto f, auto g) {
      return [f, g](const ParamMap& m) -> std::optional<std::string> {
        if (auto r = f(m)) return r;
        return g(m);
      };
    };
    auto P = [](const ParamMap& m, const char* n) { return param(m, n); };

    // ---- R1.1
    R.push_back({"R1.1", "t=-1", "t=-1", t_is(-1),
                 [=](ParamMap& m, std::mt19937_64& g) { m["t"] = -1; draw(m, g, "R1.1"); },
                 [=](const ParamMap& m, std::size_t) {
                   Scalar b = P(m, "b"), p = P(m, "p");
                   return Gens{xx(2, 1) + xx(1, 2), xx(3, 1) + xx(1, 3), xx(3, 2) + xx(2, 3) - b * xx(1, 2),
                               xx(1, 1), xx(2, 2), xx(3, 3) - b * xx(1, 3) + p * xx(1, 2)};
                 },
                 basis_of(BasisKind::B0), {}});
    R.push_back({"R1.1", "t=1", "t=1", t_is(1),
                 [=](ParamMap& m, std::mt19937_64& g) { m["t"] = 1; draw(m, g, "R1.1"); },
                 [=](const ParamMap& m, std::size_t) {
                   Scalar a = P(m, "a"), b = P(m, "b");
                   return Gens{xx(2, 1) - xx(1, 2), xx(3, 1) - xx(1, 3) - a * xx(1, 1),
                               xx(3, 2) - xx(2, 3) + (b - 2 * a) * xx(1, 2)};
                 },
                 basis_of(BasisKind::B3), {}});

    // ---- R1.2
    auto r12_quadratic_i = [=](const ParamMap& m) {
      Scalar b = P(m, "b"), p = P(m, "p");
      return Gens{xx(2, 1) - xx(1, 2), xx(3, 1) - xx(1, 3) + (p - b) / 2 * xx(1, 1)};
    };
    auto r12_gens_i = [=](const ParamMap& m, std::size_t maxdeg) {
      Gens g = r12_quadratic_i(m);
      std::size_t top = maxdeg >= 3 ? (maxdeg - 3) / 2 : 0;
      auto zc = r12::z_chain(r12::Subcase::i, m, top + 1);
      for (std::size_t n = 0; 2 * n + 3 <= maxdeg; ++n) g.push_back(zc.z[n + 1] * zc.z[n] - zc.z[n] * zc.z[n + 1]);
      return g;
    };
    auto r12_gens_ii = [=](const ParamMap& m, std::size_t maxdeg) {
      Scalar b = P(m, "b"), p = P(m, "p");
      TensorVector w = r12::x31();
      Gens g{xx(2, 1) + xx(1, 2), xx(1, 1), xx(2, 2), w * x(2) - x(2) * w, x(3) * w - w * x(3) + (p - b) * (x(1) * w)};
      auto zc = r12::z_chain(r12::Subcase::ii, m, maxdeg);
      for (std::size_t n = 1; 4 * n + 1 <= maxdeg; ++n) {
        g.push_back(zc.z[2 * n] * zc.z[2 * n - 1] - zc.z[2 * n - 1] * zc.z[2 * n]);
        if (4 * n + 2 <= maxdeg) g.push_back(zc.z[2 * n] * zc.z[2 * n]);
      }
      return g;
    };
    auto extra_generator = [=](r12::Subcase s, const ParamMap& m, std::size_t maxdeg, Gens g) {
      auto N = r12::vanishing_index(s, m);
      if (N && *N + 2 <= maxdeg) {
        auto zc = r12::z_chain(s, m, *N + 1);
        Scalar coef = Scalar(static_cast<long>(*N + 1)) * (P(m, "b") + P(m, "p")) / 2;
        g.push_back(zc.z[*N + 1] + coef * (x(1) * zc.z[*N]));
      }
      return g;
    };
    auto sample_generic = [=](r12::Subcase s, long t) {
      return [=](ParamMap& m, std::mt19937_64& g) {
        m["t"] = t;
        ParamMap pinned = m;
        for (int tries = 0; tries < 1000; ++tries) {
          m = pinned;
          draw(m, g, "R1.2");
          bool bad = s == r12::Subcase::i ? P(m, "b") == P(m, "p") - 2 * P(m, "q") : P(m, "b") == -P(m, "p");
          if (!bad && !r12::vanishing_index(s, m)) return;
        }
        throw ConstraintError("could not sample generic R1.2 parameters");
      };
    };
    // q solved from beta_N = 0 with N = 1 unless pinned through q.
    auto sample_vanishing = [=](r12::Subcase s, long t) {
      return [=](ParamMap& m, std::mt19937_64& g) {
        m["t"] = t;
        ParamMap pinned = m;
        for (int tries = 0; tries < 1000; ++tries) {
          m = pinned;
          bool q_pinned = m.count("q") > 0;
          m.erase("q");
          draw(m, g, "R1.2");
          if (q_pinned) m["q"] = pinned.at("q");
          else m["q"] = s == r12::Subcase::i ? -P(m, "b") : -P(m, "b");
          bool bad = s == r12::Subcase::i ? P(m, "b") == P(m, "p") - 2 * P(m, "q") : P(m, "b") == -P(m, "p");
          if (!bad && r12::vanishing_index(s, m)) return;
        }
        throw ConstraintError("could not sample R1.2 parameters with a vanishing beta");
      };
    };
    auto r12_case_i = [=](const ParamMap& m) -> std::optional<std::string> {
      if (auto r = need(P(m, "t") == 1, "t=1")) return r;
      return need(P(m, "b") != P(m, "p") - 2 * P(m, "q"), "b!=p-2q");
    };
    auto r12_case_ii = [=](const ParamMap& m) -> std::optional<std::string> {
      if (auto r = need(P(m, "t") == -1, "t=-1")) return r;
      return need(P(m, "b") != -P(m, "p"), "b!=-p");
    };
    R.push_back({"R1.2", "i-a", "t=1, b!=p-2q, beta_n!=0 for all n",
                 both(r12_case_i,
                      [=](const ParamMap& m) { return need(!r12::vanishing_index(r12::Subcase::i, m), "beta_n!=0"); }),
                 sample_generic(r12::Subcase::i, 1), r12_gens_i, basis_of(BasisKind::Binf), {}});
    R.push_back({"R1.2", "i-b", "t=1, b!=p-2q, beta_N=0",
                 both(r12_case_i,
                      [=](const ParamMap& m) {
                        return need(r12::vanishing_index(r12::Subcase::i, m).has_value(), "beta_N=0 for some N");
                      }),
                 sample_vanishing(r12::Subcase::i, 1),
                 [=](const ParamMap& m, std::size_t d) { return extra_generator(r12::Subcase::i, m, d, r12_gens_i(m, d)); },
                 [=](const ParamMap& m) {
                   return BasisDescriptor{BasisKind::BN3, *r12::vanishing_index(r12::Subcase::i, m)};
                 },
                 {}});
    R.push_back({"R1.2", "ii-a", "t=-1, b!=-p, beta~_n!=0 for all n",
                 both(r12_case_ii,
                      [=](const ParamMap& m) { return need(!r12::vanishing_index(r12::Subcase::ii, m), "beta~_n!=0"); }),
                 sample_generic(r12::Subcase::ii, -1), r12_gens_ii, basis_of(BasisKind::Btilde_inf), {}});
    R.push_back({"R1.2", "ii-b", "t=-1, b!=-p, beta~_N=0 (N odd)",
                 both(r12_case_ii,
                      [=](const ParamMap& m) {
                        return need(r12::vanishing_index(r12::Subcase::ii, m).has_value(), "beta~_N=0 for some odd N");
                      }),
                 sample_vanishing(r12::Subcase::ii, -1),
                 [=](const ParamMap& m, std::size_t d) {
                   return extra_generator(r12::Subcase::ii, m, d, r12_gens_ii(m, d));
                 },
                 [=](const ParamMap& m) {
                   return BasisDescriptor{BasisKind::Btilde, *r12::vanishing_index(r12::Subcase::ii, m)};
                 },
                 {}});
    R.push_back({"R1.2", "iii-a", "t=1, b=p-2q",
                 both(t_is(1), [=](const ParamMap& m) { return need(P(m, "b") == P(m, "p") - 2 * P(m, "q"), "b=p-2q"); }),
                 [=](ParamMap& m, std::mt19937_64& g) {
                   m["t"] = 1;
                   m.erase("b");
                   draw(m, g, "R1.2");
                   m["b"] = P(m, "p") - 2 * P(m, "q");
                 },
                 [=](const ParamMap& m, std::size_t) {
                   Scalar p = P(m, "p"), q = P(m, "q");
                   return Gens{xx(2, 1) - xx(1, 2), xx(3, 1) - xx(1, 3) + q * xx(1, 1),
                               xx(3, 2) - xx(2, 3) + (2 * q - p) * xx(1, 2)};
                 },
                 basis_of(BasisKind::B3), {}});
    auto r12_iii_b_gens = [=](const ParamMap& m) {
      Scalar p = P(m, "p");
      return Gens{xx(2, 1) + xx(1, 2), xx(3, 1) + xx(1, 3), xx(3, 2) + xx(2, 3) + p * xx(1, 2), xx(1, 1), xx(2, 2)};
    };
    auto r12_iii_bc = [=](const ParamMap& m) -> std::optional<std::string> {
      if (auto r = need(P(m, "t") == -1, "t=-1")) return r;
      return need(P(m, "b") == -P(m, "p"), "b=-p");
    };
    R.push_back({"R1.2", "iii-b", "t=-1, b=-p, a!=-p^2",
                 both(r12_iii_bc, [=](const ParamMap& m) { return need(P(m, "a") != -P(m, "p") * P(m, "p"), "a!=-p^2"); }),
                 [=](ParamMap& m, std::mt19937_64& g) {
                   m["t"] = -1;
                   ParamMap pinned = m;
                   for (int tries = 0; tries < 1000; ++tries) {
                     m = pinned;
                     m.erase("b");
                     draw(m, g, "R1.2");
                     m["b"] = -P(m, "p");
                     if (P(m, "a") != -P(m, "p") * P(m, "p")) return;
                   }
                   throw ConstraintError("could not sample R1.2 iii-b");
                 },
                 [=](const ParamMap& m, std::size_t) { return r12_iii_b_gens(m); }, basis_of(BasisKind::B1), {}});
    R.push_back({"R1.2", "iii-c", "t=-1, b=-p, a=-p^2",
                 both(r12_iii_bc, [=](const ParamMap& m) { return need(P(m, "a") == -P(m, "p") * P(m, "p"), "a=-p^2"); }),
                 [=](ParamMap& m, std::mt19937_64& g) {
                   m["t"] = -1;
                   m.erase("b");
                   m.erase("a");
                   draw(m, g, "R1.2");
                   m["b"] = -P(m, "p");
                   m["a"] = -P(m, "p") * P(m, "p");
                 },
                 [=](const ParamMap& m, std::size_t) {
                   Gens g = r12_iii_b_gens(m);
                   g.push_back(xx(3, 3) + P(m, "k") * xx(1, 2) + P(m, "p") * xx(1, 3));
                   return g;
                 },
                 basis_of(BasisKind::B0), {}});

    // ---- R1.3 and R1.4 share the shape (t=1 | t=-1, s!=0 | t=-1, s=0)
    auto three_rows = [&](const std::string& fam, const char* s, std::function<Gens(const ParamMap&)> g1,
                          std::function<Gens(const ParamMap&)> gm, std::function<TensorVector(const ParamMap&)> extra) {
      std::string sn = s;
      R.push_back({fam, "a", "t=1", t_is(1), [=](ParamMap& m, std::mt19937_64& g) { m["t"] = 1; draw(m, g, fam); },
                   [=](const ParamMap& m, std::size_t) { return g1(m); }, basis_of(BasisKind::B3), {}});
      R.push_back({fam, "b", "t=-1, " + sn + "!=0",
                   both(t_is(-1), [=](const ParamMap& m) { return need(param(m, sn) != 0, sn + "!=0"); }),
                   [=](ParamMap& m, std::mt19937_64& g) { m["t"] = -1; draw(m, g, fam); },
                   [=](const ParamMap& m, std::size_t) { return gm(m); }, basis_of(BasisKind::B1), {}});
      R.push_back({fam, "c", "t=-1, " + sn + "=0",
                   both(t_is(-1), [=](const ParamMap& m) { return need(param(m, sn) == 0, sn + "=0"); }),
                   [=](ParamMap& m, std::mt19937_64& g) {
                     m["t"] = -1;
                     m[sn] = 0;
                     draw(m, g, fam);
                   },
                   [=](const ParamMap& m, std::size_t) {
                     Gens g = gm(m);
                     g.push_back(extra(m));
                     return g;
                   },
                   basis_of(BasisKind::B0), {}});
    };
    three_rows(
        "R1.3", "q",
        [=](const ParamMap& m) {
          return Gens{xx(2, 1) - xx(1, 2), xx(3, 1) - xx(1, 3) - P(m, "a") * xx(1, 1), xx(3, 2) - xx(2, 3) - P(m, "b") * xx(1, 2)};
        },
        [=](const ParamMap& m) {
          return Gens{xx(2, 1) + xx(1, 2), xx(3, 1) + xx(1, 3), xx(3, 2) + xx(2, 3) - P(m, "b") * xx(1, 2), xx(1, 1),
                      xx(2, 2)};
        },
        [=](const ParamMap& m) { return xx(3, 3) - P(m, "b") * xx(1, 3) - P(m, "p") * xx(1, 2); });
    three_rows(
        "R1.4", "p",
        [=](const ParamMap& m) {
          Scalar a = P(m, "a"), b = P(m, "b");
          return Gens{xx(2, 1) - xx(1, 2), xx(3, 1) - xx(1, 3) - a * xx(1, 1), xx(3, 2) - xx(2, 3) + (a - 2 * b) * xx(1, 2)};
        },
        [=](const ParamMap& m) {
          Scalar a = P(m, "a"), b = P(m, "b");
          return Gens{xx(2, 1) + xx(1, 2), xx(3, 1) + xx(1, 3), xx(3, 2) + xx(2, 3) + (a - 2 * b) * xx(1, 2), xx(1, 1),
                      xx(2, 2)};
        },
        [=](const ParamMap& m) { return xx(3, 3) - P(m, "b") * xx(1, 3); });

    // ---- R1.5
    R.push_back({"R1.5", "a", "t=1, p=2q",
                 both(t_is(1), [=](const ParamMap& m) { return need(P(m, "p") == 2 * P(m, "q"), "p=2q"); }),
                 [=](ParamMap& m, std::mt19937_64& g) {
                   m["t"] = 1;
                   m.erase("p");
                   draw(m, g, "R1.5");
                   m["p"] = 2 * P(m, "q");
                 },
                 [=](const ParamMap& m, std::size_t) {
                   Scalar l = P(m, "l"), q = P(m, "q"), k = P(m, "k");
                   return Gens{xx(2, 1) - xx(1, 2) - l * xx(1, 1), xx(3, 1) - xx(1, 3) + q * xx(1, 1),
                               xx(3, 2) - xx(2, 3) + l * xx(1, 3) + q * xx(1, 2) + (k - q * l) * xx(1, 1)};
                 },
                 basis_of(BasisKind::B3), {}});
    auto r15_minus = [=](const ParamMap& m) {
      Scalar l = P(m, "l"), q = P(m, "q");
      return Gens{xx(2, 1) + xx(1, 2), xx(3, 1) + xx(1, 3), xx(3, 2) + xx(2, 3) - l * xx(1, 3) + q * xx(1, 2), xx(1, 1),
                  xx(2, 2) - l * xx(1, 2)};
    };
    auto r15_t = [=](const ParamMap& m) -> std::optional<std::string> {
      if (auto r = need(P(m, "t") == -1, "t=-1")) return r;
      return need(P(m, "p") == 0, "p=0");
    };
    R.push_back({"R1.5", "b", "t=-1, p=0, a!=b*l",
                 both(r15_t, [=](const ParamMap& m) { return need(P(m, "a") != P(m, "b") * P(m, "l"), "a!=b*l"); }),
                 [=](ParamMap& m, std::mt19937_64& g) {
                   m["t"] = -1;
                   m["p"] = 0;
                   ParamMap pinned = m;
                   for (int tries = 0; tries < 1000; ++tries) {
                     m = pinned;
                     draw(m, g, "R1.5");
                     if (P(m, "a") != P(m, "b") * P(m, "l")) return;
                   }
                   throw ConstraintError("could not sample R1.5 b");
                 },
                 [=](const ParamMap& m, std::size_t) { return r15_minus(m); }, basis_of(BasisKind::B1),
                 {"hypothesis p!=0 replaced by p=0"}});
    R.push_back({"R1.5", "c", "t=-1, p=0, a=b*l",
                 both(r15_t, [=](const ParamMap& m) { return need(P(m, "a") == P(m, "b") * P(m, "l"), "a=b*l"); }),
                 [=](ParamMap& m, std::mt19937_64& g) {
                   m["t"] = -1;
                   m["p"] = 0;
                   m.erase("a");
                   draw(m, g, "R1.5");
                   m["a"] = P(m, "b") * P(m, "l");
                 },
                 [=](const ParamMap& m, std::size_t) {
                   Gens g = r15_minus(m);
                   g.push_back(xx(3, 3) + P(m, "b") * xx(1, 2));
                   return g;
                 },
                 basis_of(BasisKind::B0), {"hypothesis p!=0 replaced by p=0"}});

    // ---- R1.6
    R.push_back({"R1.6", "t=-1", "t=-1", t_is(-1),
                 [=](ParamMap& m, std::mt19937_64& g) { m["t"] = -1; draw(m, g, "R1.6"); },
                 [=](const ParamMap& m, std::size_t) {
                   Scalar a = P(m, "a"), p = P(m, "p"), b = P(m, "b"), q = P(m, "q");
                   return Gens{xx(2, 1) + xx(1, 2), xx(3, 1) + xx(1, 3), xx(3, 2) + xx(2, 3) - a * xx(1, 3) - p * xx(1, 2),
                               xx(1, 1), xx(2, 2) - b * xx(1, 2), xx(3, 3) - q * xx(1, 3)};
                 },
                 basis_of(BasisKind::B0), {}});
    R.push_back({"R1.6", "t=1", "t=1", t_is(1),
                 [=](ParamMap& m, std::mt19937_64& g) { m["t"] = 1; draw(m, g, "R1.6"); },
                 [=](const ParamMap& m, std::size_t) {
                   Scalar a = P(m, "a"), p = P(m, "p"), k = P(m, "k");
                   return Gens{xx(2, 1) - xx(1, 2) - a * xx(1, 1), xx(3, 1) - xx(1, 3) - p * xx(1, 1),
                               xx(3, 2) - xx(2, 3) + a * xx(1, 3) - p * xx(1, 2) + (k + p * a) * xx(1, 1)};
                 },
                 basis_of(BasisKind::B3), {}});

    // ---- R1.7
    R.push_back({"R1.7", "a", "t=1, a=p-2q",
                 both(t_is(1), [=](const ParamMap& m) { return need(P(m, "a") == P(m, "p") - 2 * P(m, "q"), "a=p-2q"); }),
                 [=](ParamMap& m, std::mt19937_64& g) {
                   m["t"] = 1;
                   m.erase("a");
                   draw(m, g, "R1.7");
                   m["a"] = P(m, "p") - 2 * P(m, "q");
                 },
                 [=](const ParamMap& m, std::size_t) {
                   Scalar k = P(m, "k"), q = P(m, "q"), d = P(m, "d");
                   return Gens{xx(2, 1) - xx(1, 2) - k * xx(1, 1), xx(3, 1) - xx(1, 3) - q * xx(1, 1),
                               xx(3, 2) - xx(2, 3) + k * xx(1, 3) - q * xx(1, 2) - (d + q * k) * xx(1, 1)};
                 },
                 basis_of(BasisKind::B3), {}});
    auto r17_minus = [=](const ParamMap& m) {
      Scalar k = P(m, "k"), q = P(m, "q"), l = P(m, "l");
      return Gens{xx(2, 1) + xx(1, 2), xx(3, 1) + xx(1, 3), xx(3, 2) + xx(2, 3) - k * xx(1, 3) - q * xx(1, 2), xx(1, 1),
                  xx(2, 2) - l * xx(1, 2)};
    };
    auto r17_t = [=](const ParamMap& m) -> std::optional<std::string> {
      if (auto r = need(P(m, "t") == -1, "t=-1")) return r;
      return need(P(m, "a") == -P(m, "p"), "a=-p");
    };
    R.push_back({"R1.7", "b", "t=-1, a=-p, b!=-p^2",
                 both(r17_t, [=](const ParamMap& m) { return need(P(m, "b") != -P(m, "p") * P(m, "p"), "b!=-p^2"); }),
                 [=](ParamMap& m, std::mt19937_64& g) {
                   m["t"] = -1;
                   ParamMap pinned = m;
                   for (int tries = 0; tries < 1000; ++tries) {
                     m = pinned;
                     m.erase("a");
                     draw(m, g, "R1.7");
                     m["a"] = -P(m, "p");
                     if (P(m, "b") != -P(m, "p") * P(m, "p")) return;
                   }
                   throw ConstraintError("could not sample R1.7 b");
                 },
                 [=](const ParamMap& m, std::size_t) { return r17_minus(m); }, basis_of(BasisKind::B1), {}});
    R.push_back({"R1.7", "c", "t=-1, a=-p, b=-p^2",
                 both(r17_t, [=](const ParamMap& m) { return need(P(m, "b") == -P(m, "p") * P(m, "p"), "b=-p^2"); }),
                 [=](ParamMap& m, std::mt19937_64& g) {
                   m["t"] = -1;
                   m.erase("a");
                   m.erase("b");
                   draw(m, g, "R1.7");
                   m["a"] = -P(m, "p");
                   m["b"] = -P(m, "p") * P(m, "p");
                 },
                 [=](const ParamMap& m, std::size_t) {
                   Gens g = r17_minus(m);
                   g.push_back(xx(3, 3) - P(m, "p") * xx(1, 3));
                   return g;
                 },
                 basis_of(BasisKind::B0), {}});

    // ---- R1.8
    R.push_back({"R1.8", "t=-1", "t=-1", t_is(-1),
                 [=](ParamMap& m, std::mt19937_64& g) { m["t"] = -1; draw(m, g, "R1.8"); },
                 [=](const ParamMap& m, std::size_t) {
                   Scalar a = P(m, "a"), q = P(m, "q"), p = P(m, "p");
                   return Gens{xx(2, 1) + xx(1, 2), xx(3, 1) + xx(1, 3), xx(3, 2) + xx(2, 3) - a * xx(1, 3) + q * xx(1, 2),
                               xx(1, 1), xx(2, 2) - a * xx(1, 2), xx(3, 3) + p * xx(1, 2)};
                 },
                 basis_of(BasisKind::B0), {}});
    R.push_back({"R1.8", "t=1", "t=1", t_is(1),
                 [=](ParamMap& m, std::mt19937_64& g) { m["t"] = 1; draw(m, g, "R1.8"); },
                 [=](const ParamMap& m, std::size_t) {
                   Scalar a = P(m, "a"), q = P(m, "q"), b = P(m, "b");
                   return Gens{xx(2, 1) - xx(1, 2) - a * xx(1, 1), xx(3, 1) - xx(1, 3) - q * xx(1, 1),
                               xx(3, 2) - xx(2, 3) + a * xx(1, 3) - q * xx(1, 2) + b * xx(1, 1)};
                 },
                 basis_of(BasisKind::B3), {}});

    // ---- R1.9
    const std::vector<std::string> typo = {"paper-typo flagged (t^2)"};
    auto b_is_one = [=](const ParamMap& m) { return need(P(m, "b") == 1, "b=1"); };
    auto r19_minus = [=](const ParamMap&) {
      return Gens{xx(2, 1) + xx(1, 2), xx(3, 1) + xx(1, 3) + xx(1, 2), xx(3, 2) + xx(2, 3) - xx(1, 3), xx(1, 1),
                  xx(2, 2) - xx(1, 2)};
    };
    R.push_back({"R1.9", "a", "t=1, b=1", both(t_is(1), b_is_one),
                 [=](ParamMap& m, std::mt19937_64& g) {
                   m["t"] = 1;
                   m["b"] = 1;
                   draw(m, g, "R1.9");
                 },
                 [=](const ParamMap& m, std::size_t) {
                   Scalar a = P(m, "a");
                   return Gens{xx(2, 1) - xx(1, 2) - xx(1, 1), xx(3, 1) - xx(1, 3) - xx(1, 2),
                               xx(3, 2) - xx(2, 3) - xx(2, 2) + xx(1, 3) + xx(1, 2) - a * xx(1, 1)};
                 },
                 basis_of(BasisKind::B3), typo});
    R.push_back({"R1.9", "b", "t=-1, b=1, p!=-a-q",
                 both(both(t_is(-1), b_is_one),
                      [=](const ParamMap& m) { return need(P(m, "p") != -P(m, "a") - P(m, "q"), "p!=-a-q"); }),
                 [=](ParamMap& m, std::mt19937_64& g) {
                   m["t"] = -1;
                   m["b"] = 1;
                   ParamMap pinned = m;
                   for (int tries = 0; tries < 1000; ++tries) {
                     m = pinned;
                     draw(m, g, "R1.9");
                     if (P(m, "p") != -P(m, "a") - P(m, "q")) return;
                   }
                   throw ConstraintError("could not sample R1.9 b");
                 },
                 [=](const ParamMap& m, std::size_t) { return r19_minus(m); }, basis_of(BasisKind::B1), typo});
    R.push_back({"R1.9", "c", "t=-1, b=1, p=-a-q",
                 both(both(t_is(-1), b_is_one),
                      [=](const ParamMap& m) { return need(P(m, "p") == -P(m, "a") - P(m, "q"), "p=-a-q"); }),
                 [=](ParamMap& m, std::mt19937_64& g) {
                   m["t"] = -1;
                   m["b"] = 1;
                   m.erase("p");
                   draw(m, g, "R1.9");
                   m["p"] = -P(m, "a") - P(m, "q");
                 },
                 [=](const ParamMap& m, std::size_t) {
                   Gens g = r19_minus(m);
                   g.push_back(xx(3, 3) - xx(2, 3) + xx(1, 3) - P(m, "q") * xx(1, 2));
                   return g;
                 },
                 basis_of(BasisKind::B0), typo});

    // ---- R1.10
    auto r110_minus = [=](const ParamMap& m) {
      Scalar a = P(m, "a");
      return Gens{xx(2, 1) + xx(1, 2), xx(3, 1) + xx(1, 3) + 2 * xx(1, 2),
                  xx(3, 2) + xx(2, 3) + 2 * (1 - 2 * a) * xx(1, 3) + 4 * (1 - a) * xx(1, 2), xx(1, 1),
                  xx(2, 2) - 2 * a * xx(1, 2)};
    };
    auto special_a = [](const Scalar& a) { return a == -7 || a == 0 || a == 1; };
    R.push_back({"R1.10", "a", "t=1", t_is(1), [=](ParamMap& m, std::mt19937_64& g) { m["t"] = 1; draw(m, g, "R1.10"); },
                 [=](const ParamMap& m, std::size_t) {
                   Scalar a = P(m, "a");
                   return Gens{xx(2, 1) - xx(1, 2) - 2 * xx(1, 1), xx(3, 1) - xx(1, 3) - 2 * xx(1, 2),
                               xx(3, 2) - xx(2, 3) - 2 * a * xx(2, 2) + (4 * a - 2) * xx(1, 3) + (8 * a - 4) * xx(1, 2) -
                                   4 * a * (a + 1) * xx(1, 1)};
                 },
                 basis_of(BasisKind::B3), {}});
    R.push_back({"R1.10", "b", "t=-1, a not in {-7,0,1}",
                 both(t_is(-1), [=](const ParamMap& m) { return need(!special_a(P(m, "a")), "a not in {-7,0,1}"); }),
                 [=](ParamMap& m, std::mt19937_64& g) {
                   m["t"] = -1;
                   ParamMap pinned = m;
                   for (int tries = 0; tries < 1000; ++tries) {
                     m = pinned;
                     draw(m, g, "R1.10");
                     if (!special_a(P(m, "a"))) return;
                   }
                   throw ConstraintError("could not sample R1.10 b");
                 },
                 [=](const ParamMap& m, std::size_t) { return r110_minus(m); }, basis_of(BasisKind::B1), {}});
    R.push_back({"R1.10", "c", "t=-1, a in {-7,0,1}",
                 both(t_is(-1), [=](const ParamMap& m) { return need(special_a(P(m, "a")), "a in {-7,0,1}"); }),
                 [=](ParamMap& m, std::mt19937_64& g) {
                   m["t"] = -1;
                   if (!m.count("a")) {
                     std::uniform_int_distribution<int> pick(0, 2);
                     static const long choices[] = {-7, 0, 1};
                     m["a"] = choices[pick(g)];
                   }
                 },
                 [=](const ParamMap& m, std::size_t) {
                   Scalar a = P(m, "a");
                   Gens g = r110_minus(m);
                   g.push_back(xx(3, 3) - 2 * (2 * a - 1) * xx(2, 3) - a * (a * a - 2 * a - 3) * xx(1, 3) -
                               2 * a * (a * a - a + 4) * xx(1, 2));
                   return g;
                 },
                 basis_of(BasisKind::B0), {}});
    return R;
  }();
  return rows;
}

inline const TableRow& find_row(const std::string& family, const std::string& id) {
  for (const auto& r : table_rows())
    if (r.family == family && r.id == id) return r;
  throw std::invalid_argument("unknown table row '" + family + " " + id + "'");
}

inline std::vector<const TableRow*> rows_of(const std::string& family) {
  family_param_names(family);
  std::vector<const TableRow*> out;
  for (const auto& r : table_rows())
    if (r.family == family) out.push_back(&r);
  return out;
}

inline std::string growth_label(const BasisDescriptor& b) {
  switch (b.kind) {
    case BasisKind::B0: return "finite (dim 8)";
    case BasisKind::B1: return "linear (GK 1)";
    case BasisKind::B3: return "cubic (GK 3)";
    case BasisKind::Binf:
    case BasisKind::Btilde_inf: return "infinite GK";
    case BasisKind::BN3: return "GK " + std::to_string(b.N + 3);
    case BasisKind::Btilde: return "GK " + std::to_string((b.N + 5) / 2);
  }
  return "?";
}

inline ExpectedOutcome expected_for_row(const TableRow& row, const ParamMap& m, std::size_t max_degree) {
  ExpectedOutcome e;
  e.covered = true;
  e.family = row.family;
  e.row = row.id;
  e.note = row.conditions;
  e.generators = row.generators(m, max_degree);
  for (const auto& g : e.generators)
    if (g.degree() == 2) ++e.quadratic_count;
  e.basis = row.basis(m);
  if (e.basis->kind == BasisKind::B0) e.finite_dimension = 8;
  e.growth = growth_label(*e.basis);
  e.flags = row.flags;
  return e;
}

inline ExpectedOutcome expected(const std::string& family, const ParamMap& m, std::size_t max_degree = 5) {
  check_param_names(family, m);
  for (const TableRow* row : rows_of(family))
    if (!row->violation(m)) return expected_for_row(*row, m, max_degree);
  ExpectedOutcome e;
  e.family = family;
  const Scalar& t = param(m, "t");
  if (t * t != 1) {
    e.covered = true;
    e.row = "t^2!=1";
    e.note = "no quadratic relations";
    e.growth = "unknown";
  } else {
    e.note = "not covered by the paper";
  }
  return e;
}

inline std::vector<FamilyInfo> list_families() {
  static const std::map<std::string, std::string> conditions = {
      {"R1.5", "t=1 and p=2q, or t=-1 and p=0"},
      {"R1.7", "t=1 and a=p-2q, or t=-1 and a=-p"},
      {"R1.9", "b=1"},
  };
  std::vector<FamilyInfo> out;
  for (const auto& f : family_ids()) {
    FamilyInfo info{f, family_param_names(f), "", {}};
    if (auto it = conditions.find(f); it != conditions.end()) info.conditions = it->second;
    for (const TableRow* r : rows_of(f)) info.rows.push_back(r->id + " [" + r->conditions + "]");
    out.push_back(info);
  }
  return out;
}

// Fill unpinned parameters of a family with draws; t must already be present or is drawn from {1,-1,2}.
inline ParamMap sample_family(const std::string& family, std::mt19937_64& rng, ParamMap pinned = {}) {
  if (!pinned.count("t")) {
    static const long ts[] = {1, -1, 2};
    std::uniform_int_distribution<int> pick(0, 2);
    pinned["t"] = ts[pick(rng)];
  }
  for (const auto& n : family_param_names(family))
    if (!pinned.count(n)) pinned[n] = draw_rational(rng);
  return pinned;
}

// Pinned values are kept; a row whose constraints would overwrite one is rejected.
inline ParamMap sample_row(const TableRow& row, std::mt19937_64& rng, ParamMap pinned = {}) {
  ParamMap m = pinned;
  row.sample(m, rng);
  for (const auto& [k, v] : pinned)
    if (m.at(k) != v) {
      ParamMap forced = m;
      for (const auto& [k2, v2] : pinned) forced[k2] = v2;
      auto bad = row.violation(forced);
      throw ConstraintError(bad ? *bad : "pinned " + k + " conflicts with row " + row.id);
    }
  if (auto v = row.violation(m)) throw ConstraintError(*v);
  return m;
}

}  // namespace nichols
