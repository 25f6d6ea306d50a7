#include <nichols/braiding.hpp>
#include <nichols/catalog.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace nichols;

namespace {

// fixes every basis tensor except c(x1 x1) = x1 x1 + x2 x2
Braiding bad_d2() {
  std::vector<Scalar> r(16);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) r[((i * 2 + j) * 2 + i) * 2 + j] = 1;
  r[((0 * 2 + 0) * 2 + 1) * 2 + 1] = 1;
  return {2, r};
}

oracle::Dense dense_of(const Braiding& c) {
  return oracle::braiding_matrix(c.dim(), [&](auto i, auto j, auto k, auto l) { return c.r(i, j, k, l); });
}

std::vector<std::pair<std::string, ParamMap>> catalog_samples(int per_family, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<std::string, ParamMap>> out;
  for (const auto& f : family_ids())
    for (int k = 0; k < per_family; ++k) out.emplace_back(f, sample_family(f, rng));
  return out;
}

}  // namespace

TEST(BraidEquation, Examples) {
  EXPECT_TRUE(check_braid_equation(Braiding::flip(3)));
  EXPECT_TRUE(check_braid_equation(build_unchecked("R1.1", {{"t", 1}, {"a", 1}, {"b", 2}, {"p", 3}})));
  EXPECT_FALSE(check_braid_equation(bad_d2()));
  auto v = braid_violation(bad_d2());
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(*v, (std::array<int, 3>{1, 1, 1}));
  EXPECT_THROW(validate(bad_d2()), std::domain_error);
  try {
    validate(bad_d2());
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("x1⊗x1⊗x1"), std::string::npos);
  }
}

TEST(BraidEquation, AgreesWithDenseOracle) {
  for (const auto& [f, m] : catalog_samples(2, 3)) {
    Braiding c = build_unchecked(f, m);
    EXPECT_EQ(check_braid_equation(c), oracle::braid_holds(dense_of(c), 3)) << f;
    EXPECT_TRUE(check_braid_equation(c)) << f << " " << format_params(m);
  }
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = oracle::random_dense(4, 4, rng, 60);
    Braiding c = Braiding::from_matrix(2, SparseMatrix::from_dense(d));
    EXPECT_EQ(check_braid_equation(c), oracle::braid_holds(d, 2));
  }
}

TEST(Qybe, Examples) {
  EXPECT_TRUE(check_qybe(Braiding::flip(3)));
  EXPECT_TRUE(check_qybe(Braiding::identity(3)));
  EXPECT_FALSE(check_qybe(compose_flip(bad_d2())));
}

TEST(Qybe, EquivalentToBraidEquationThroughFlip) {
  for (const auto& [f, m] : catalog_samples(1, 5)) {
    Braiding c = build_unchecked(f, m);
    EXPECT_TRUE(check_qybe(compose_flip(c))) << f;
    EXPECT_EQ(compose_flip(compose_flip(c)), c);
  }
}

TEST(Inverse, Examples) {
  EXPECT_EQ(inverse(Braiding::flip(3)), Braiding::flip(3));
  EXPECT_THROW(inverse(Braiding(3, std::vector<Scalar>(81))), std::domain_error);
  for (const auto& [f, m] : catalog_samples(5, 6)) {
    Braiding c = build_unchecked(f, m);
    Braiding ci = inverse(c);
    EXPECT_EQ(c.matrix() * ci.matrix(), SparseMatrix::identity(9)) << f;
  }
}

TEST(Rigidity, Examples) {
  auto [m, bij] = rigidity(Braiding::flip(3));
  EXPECT_TRUE(bij);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      // f^a⊗x_b ↦ x_b⊗f^a
      SparseRow col = m.column(a * 3 + b);
      ASSERT_EQ(col.size(), 1u);
      EXPECT_EQ(col[0].first, b * 3 + a);
      EXPECT_EQ(col[0].second, 1);
    }
  for (const auto& [f, p] : catalog_samples(5, 7)) EXPECT_TRUE(rigidity(build_unchecked(f, p)).second) << f;
  auto [bm, bbij] = rigidity(bad_d2());
  EXPECT_EQ(bbij, rank(bm) == 4u);
}

TEST(DualExchange, Examples) {
  DualExchange e(Braiding::flip(3));
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t v = 0; v < 3; ++v)
      for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t w = 0; w < 3; ++w) EXPECT_EQ(e.e(j, v, b, w), Scalar(j == w && b == v ? 1 : 0));
  std::vector<std::vector<Scalar>> q = {{2, 3, 5}, {7, 11, 13}, {17, 19, 23}};
  DualExchange ed(Braiding::diagonal(q));
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t v = 0; v < 3; ++v) {
      ASSERT_EQ(ed.terms(j, v).size(), 1u);
      EXPECT_EQ(ed.terms(j, v)[0].b, v);
      EXPECT_EQ(ed.terms(j, v)[0].w, j);
      EXPECT_EQ(ed.terms(j, v)[0].coeff, q[v][j]);
    }
  Scalar b = 7;
  DualExchange er(build_unchecked("R1.1", {{"t", 1}, {"a", 2}, {"b", b}, {"p", 3}}));
  EXPECT_EQ(er.e(2, 2, 2, 2), 1);
  EXPECT_EQ(er.e(2, 2, 0, 2), b);
}

TEST(Lift, Examples) {
  Braiding tau = validate(Braiding::flip(3));
  TensorVector x = TensorVector::word(3, {1, 2, 3});
  EXPECT_EQ(apply_lift(tau, x, 1), TensorVector::word(3, {2, 1, 3}));
  EXPECT_EQ(apply_lift(tau, x, 2), TensorVector::word(3, {1, 3, 2}));
  EXPECT_THROW(apply_lift(tau, x, 3), std::out_of_range);
  EXPECT_THROW(apply_lift(tau, x, 0), std::out_of_range);
  Braiding c = build("R1.3", {{"t", -1}, {"a", 2}, {"b", 3}, {"p", 5}, {"q", 1}});
  EXPECT_EQ(lift(c, 2, 1).matrix(), c.matrix());
  for (std::size_t j = 1; j <= 3; ++j) {
    GradedOperator l = lift(c, 4, j);
    EXPECT_EQ(l.degree(), 4u);
    EXPECT_EQ(l.matrix().rows(), 81u);
    EXPECT_EQ(l.matrix().cols(), 81u);
  }
}

TEST(Lift, MatchesKroneckerOracle) {
  Braiding c = build("R1.6", {{"t", 1}, {"a", 2}, {"b", Scalar(1, 2)}, {"p", -1}, {"k", 3}, {"q", 2}});
  auto dc = dense_of(c);
  for (std::size_t j = 1; j <= 3; ++j) {
    auto expect = oracle::lift(dc, 3, 4, j);
    SparseMatrix m = lift(c, 4, j).matrix();
    for (std::size_t r = 0; r < 81; ++r)
      for (std::size_t s = 0; s < 81; ++s) ASSERT_EQ(m.get(r, s), expect[r][s]) << j << " " << r << " " << s;
  }
}

TEST(BraidingFile, RoundTrip) {
  for (const auto& [f, m] : catalog_samples(1, 8)) {
    Braiding c = build_unchecked(f, m);
    EXPECT_EQ(parse_braiding(format_braiding(c)), c) << f;
  }
}

TEST(BraidingFile, Errors) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_braiding(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("1 1 1 1 1\n"), 1u);
  EXPECT_EQ(line_of("# c\ndim 2\n1 1 1 1 1\n1 1 1 3 1\n"), 4u);
  EXPECT_EQ(line_of("dim 2\n1 1 1 1 1\n1 1 1 1 2\n"), 3u);
  EXPECT_EQ(line_of("dim 2\n\n1 1 1 1 x\n"), 3u);
  EXPECT_EQ(line_of("dim 2\n1 1 1\n"), 2u);
  EXPECT_EQ(line_of(""), 1u);
  EXPECT_EQ(line_of("dim 2 # ok\n1 2 2 1 -1/2\n"), 0u);
}
