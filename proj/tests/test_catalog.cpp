#include <nichols/catalog.hpp>
#include <nichols/free_ideal.hpp>
#include <nichols/nichols.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace nichols;

namespace {

TensorVector x(int i) { return TensorVector::letter(3, i); }
TensorVector xx(int i, int j) { return x(i) * x(j); }

// (degree, bound) lists read off the basis definitions; bound 0 = unbounded
std::vector<std::pair<std::size_t, std::size_t>> monomial_gens(BasisKind k, std::size_t N, std::size_t n) {
  using G = std::vector<std::pair<std::size_t, std::size_t>>;
  switch (k) {
    case BasisKind::B0: return G{{1, 1}, {1, 1}, {1, 1}};
    case BasisKind::B1: return G{{1, 1}, {1, 1}, {1, 0}};
    case BasisKind::B3: return G{{1, 0}, {1, 0}, {1, 0}};
    case BasisKind::Binf:
    case BasisKind::BN3: {
      G g{{1, 0}, {1, 0}, {1, 0}};
      std::size_t top = k == BasisKind::Binf ? n : N;
      for (std::size_t j = 1; j <= top; ++j) g.push_back({j + 1, 0});
      return g;
    }
    case BasisKind::Btilde_inf:
    case BasisKind::Btilde: {
      G g{{1, 1}, {1, 1}, {2, 0}, {1, 0}};
      std::size_t top = k == BasisKind::Btilde_inf ? n : N;
      for (std::size_t j = 1; j <= top; ++j) g.push_back({j + 1, j % 2 == 0 ? 1u : 0u});
      return g;
    }
  }
  return {};
}

bool known_failing(const TableRow& row) { return row.family == "R1.10" && row.id == "b"; }

}  // namespace

TEST(PbwCount, Examples) {
  BasisDescriptor b0{BasisKind::B0, 0}, b1{BasisKind::B1, 0}, b3{BasisKind::B3, 0};
  std::vector<std::size_t> e0 = {1, 3, 3, 1, 0, 0}, e1 = {1, 3, 4, 4, 4, 4};
  for (std::size_t n = 0; n <= 5; ++n) {
    EXPECT_EQ(pbw_count(b0, n), e0[n]);
    EXPECT_EQ(pbw_count(b1, n), e1[n]);
  }
  EXPECT_EQ(pbw_count(b3, 4), 15u);
  EXPECT_EQ(pbw_count({BasisKind::Binf, 0}, 2), 7u);
}

TEST(PbwCount, MatchesBruteEnumeration) {
  for (BasisKind k : {BasisKind::B0, BasisKind::B1, BasisKind::B3, BasisKind::Binf, BasisKind::BN3, BasisKind::Btilde_inf,
                      BasisKind::Btilde})
    for (std::size_t N : {1u, 2u, 3u, 5u})
      for (std::size_t n = 0; n <= 9; ++n)
        EXPECT_EQ(pbw_count({k, N}, n), oracle::count_monomials(monomial_gens(k, N, n), n))
            << BasisDescriptor{k, N}.name() << " n=" << n;
}

TEST(PbwCount, GeneratingFunctions) {
  std::vector<std::size_t> binf_degrees = {1, 1, 1, 2, 3, 4, 5, 6, 7};
  auto binf = oracle::geometric_product(binf_degrees, 7);
  for (std::size_t n = 0; n <= 7; ++n) EXPECT_EQ(static_cast<long>(pbw_count({BasisKind::Binf, 0}, n)), binf[n]);
  auto b4 = oracle::geometric_product({1, 1, 1, 2}, 5);
  EXPECT_EQ(b4, (std::vector<long>{1, 3, 7, 13, 22, 34}));
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(static_cast<long>(pbw_count({BasisKind::BN3, 1}, n)), b4[n]);
  for (std::size_t n = 0; n <= 6; ++n)
    EXPECT_EQ(static_cast<long>(pbw_count({BasisKind::B3, 0}, n)), oracle::binom(static_cast<long>(n) + 2, 2));
}

TEST(Build, Examples) {
  Scalar t = 2, a = Scalar(3, 2), b = -5, p = 7;
  Braiding c = build("R1.1", {{"t", t}, {"a", a}, {"b", b}, {"p", p}});
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) EXPECT_EQ(c.r(1, 0, k, l), k == 0 && l == 1 ? t : Scalar(0));
  EXPECT_EQ(c.r(2, 2, 0, 0), -t * a * b);
  ParamMap m10 = {{"t", 1}, {"a", Scalar(2, 3)}};
  Braiding one = build("R1.10", m10);
  for (Scalar s : {Scalar(-1), Scalar(2), Scalar(-3, 4)}) {
    m10["t"] = s;
    Braiding scaled = build_unchecked("R1.10", m10);
    for (std::size_t k = 0; k < 81; ++k) EXPECT_EQ(scaled.coeffs()[k], s * one.coeffs()[k]);
  }
}

TEST(Build, Errors) {
  try {
    build("R1.1", {{"t", 0}, {"a", 1}, {"b", 1}, {"p", 1}});
    FAIL();
  } catch (const ConstraintError& e) {
    EXPECT_EQ(std::string(e.what()), "constraint t!=0 violated");
  }
  EXPECT_THROW(build("R1.1", {{"t", 1}, {"a", 1}, {"b", 1}}), std::invalid_argument);
  EXPECT_THROW(build("R1.1", {{"t", 1}, {"a", 1}, {"b", 1}, {"p", 1}, {"q", 1}}), std::invalid_argument);
  EXPECT_THROW(build("R2.1", {{"t", 1}}), std::invalid_argument);
}

TEST(Build, TranscriptionGate) {
  std::mt19937_64 rng(11);
  for (const auto& f : family_ids())
    for (int k = 0; k < 5; ++k) {
      ParamMap m = sample_family(f, rng);
      Braiding c = build_unchecked(f, m);
      EXPECT_TRUE(check_braid_equation(c)) << f << " " << format_params(m);
      EXPECT_TRUE(rigidity(c).second) << f << " " << format_params(m);
      EXPECT_NO_THROW(build(f, m));
    }
}

TEST(Expected, Examples) {
  ExpectedOutcome e = expected("R1.3", {{"t", -1}, {"a", 2}, {"b", 3}, {"p", 5}, {"q", 1}});
  ASSERT_TRUE(e.covered);
  EXPECT_EQ(e.row, "b");
  EXPECT_EQ(e.basis->kind, BasisKind::B1);
  EXPECT_EQ(e.growth, "linear (GK 1)");
  auto has = [&](const TensorVector& v) { return std::find(e.generators.begin(), e.generators.end(), v) != e.generators.end(); };
  EXPECT_TRUE(has(xx(3, 2) + xx(2, 3) - Scalar(3) * xx(1, 2)));
  EXPECT_TRUE(has(xx(1, 1)));
  EXPECT_TRUE(has(xx(2, 2)));
  ExpectedOutcome e10 = expected("R1.10", {{"t", -1}, {"a", 0}});
  EXPECT_EQ(e10.row, "c");
  EXPECT_EQ(e10.basis->kind, BasisKind::B0);
  EXPECT_EQ(e10.finite_dimension, std::optional<std::size_t>(8));
  ExpectedOutcome e2 = expected("R1.2", {{"t", 2}, {"b", 1}, {"p", 2}, {"q", 3}, {"k", 4}, {"a", 5}});
  EXPECT_TRUE(e2.covered);
  EXPECT_EQ(e2.row, "t^2!=1");
  EXPECT_EQ(e2.note, "no quadratic relations");
  ExpectedOutcome e5 = expected("R1.5", {{"t", 1}, {"l", 1}, {"q", 1}, {"k", 1}, {"p", 5}, {"a", 1}, {"b", 1}});
  EXPECT_FALSE(e5.covered);
  EXPECT_EQ(e5.note, "not covered by the paper");
}

TEST(Expected, FiniteDimensionIffB0) {
  std::mt19937_64 rng(12);
  for (const auto& row : table_rows()) {
    ExpectedOutcome e = expected_for_row(row, sample_row(row, rng), 5);
    EXPECT_EQ(e.finite_dimension.has_value(), e.basis->kind == BasisKind::B0) << row.family << " " << row.id;
  }
}

TEST(Families, Listing) {
  auto fams = list_families();
  ASSERT_EQ(fams.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(fams[i].id, "R1." + std::to_string(i + 1));
  auto find = [&](const std::string& id) { return *std::find_if(fams.begin(), fams.end(), [&](auto& f) { return f.id == id; }); };
  EXPECT_EQ(find("R1.7").conditions, "t=1 and a=p-2q, or t=-1 and a=-p");
  EXPECT_EQ(find("R1.9").conditions, "b=1");
  for (const TableRow* r : rows_of("R1.9")) EXPECT_EQ(r->violation({{"t", r->id == "a" ? 1 : -1}, {"a", 1}, {"b", 2}, {"p", 1}, {"q", 1}}), std::optional<std::string>("constraint b=1 violated"));
}

TEST(Sampling, RowsSatisfyTheirConditions) {
  std::mt19937_64 rng(13);
  for (const auto& row : table_rows())
    for (int k = 0; k < 5; ++k) {
      ParamMap m = sample_row(row, rng);
      EXPECT_FALSE(row.violation(m).has_value()) << row.family << " " << row.id;
      EXPECT_NO_THROW(check_param_names(row.family, m));
      ExpectedOutcome e = expected(row.family, m);
      EXPECT_TRUE(e.covered);
    }
  try {
    sample_row(find_row("R1.5", "a"), rng, {{"p", 1}, {"q", 1}});
    FAIL();
  } catch (const ConstraintError& e) {
    EXPECT_EQ(std::string(e.what()), "constraint p=2q violated");
  }
  ParamMap kept = sample_row(find_row("R1.5", "a"), rng, {{"q", 3}, {"p", 6}});
  EXPECT_EQ(param(kept, "p"), 6);
}

TEST(Table, RanksMatchBasisAndQuotient) {
  std::mt19937_64 rng(14);
  for (const auto& row : table_rows()) {
    if (known_failing(row)) continue;
    ParamMap m = sample_row(row, rng);
    Braiding c = build(row.family, m);
    BasisDescriptor b = row.basis(m);
    auto h = hilbert(c, 4).ranks;
    auto q = quotient_hilbert(GeneratorSet(3, row.generators(m, 4)), 4).ranks;
    for (std::size_t n = 0; n <= 4; ++n) {
      EXPECT_EQ(h[n], pbw_count(b, n)) << row.family << " " << row.id << " n=" << n;
      EXPECT_EQ(q[n], h[n]) << row.family << " " << row.id << " n=" << n;
    }
  }
}

TEST(Table, QuadraticKernelMatchesListedGenerators) {
  std::mt19937_64 rng(15);
  for (const auto& row : table_rows()) {
    ParamMap m = sample_row(row, rng);
    Braiding c = build(row.family, m);
    Subspace k = quadratic_relations(c).kernel;
    std::size_t listed = 0;
    for (const auto& g : row.generators(m, 2)) {
      if (g.degree() != 2) continue;
      ++listed;
      EXPECT_TRUE(k.contains(g.to_sparse())) << row.family << " " << row.id;
    }
    if (known_failing(row)) EXPECT_EQ(k.dim(), listed + 1);
    else EXPECT_EQ(k.dim(), listed) << row.family << " " << row.id;
  }
}

// Observed: t=-1 with a outside {-7,0,1} still gives the 8-dimensional algebra.
TEST(Table, R110GenericRowComputesToFiniteAlgebra) {
  std::mt19937_64 rng(16);
  const TableRow& row = find_row("R1.10", "b");
  ParamMap m = sample_row(row, rng);
  EXPECT_EQ(row.basis(m).kind, BasisKind::B1);
  EXPECT_EQ(hilbert(build("R1.10", m), 5).ranks, (std::vector<std::size_t>{1, 3, 3, 1, 0, 0}));
}
