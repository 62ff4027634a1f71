#include <gtest/gtest.h>

#include <random>

#include "nilcurve/error.hpp"
#include "nilcurve/exact.hpp"
#include "nilcurve/zlattice.hpp"
#include "support.hpp"

using namespace nilcurve;
using nilcurve::test::qv;

TEST(Exact, ParsesRationalsAndDecimals) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(format_rational(Rational(-2, 4)), "-1/2");
  EXPECT_THROW(parse_rational("1/0"), ValidationError);
  EXPECT_THROW(parse_rational("abc"), ValidationError);
}

TEST(Exact, RankNullSpaceAndInverse) {
  auto m = QMatrix::from_rows({qv({"1", "2", "3"}), qv({"2", "4", "6"}), qv({"0", "1", "1"})}, 3);
  EXPECT_EQ(rank(m), 2u);
  auto ns = null_space(m);
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_TRUE(is_zero(m * ns[0]));
  EXPECT_EQ(determinant(m), 0);
  EXPECT_FALSE(inverse(m).has_value());

  auto a = QMatrix::from_rows({qv({"2", "1"}), qv({"1", "1"})}, 2);
  auto inv = inverse(a);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(a * *inv, QMatrix::identity(2));
  EXPECT_EQ(determinant(a), 1);
}

TEST(Exact, DiagonalizeFormKeepsSignature) {
  QMatrix g(2, 2);
  g(0, 1) = 1;
  g(1, 0) = 1;
  auto d = diagonalize_form(g, {unit_vector(2, 0), unit_vector(2, 1)});
  ASSERT_EQ(d.values.size(), 2u);
  int pos = 0, neg = 0;
  for (const auto& v : d.values) (v > 0 ? pos : neg)++;
  EXPECT_EQ(pos, 1);
  EXPECT_EQ(neg, 1);
  EXPECT_EQ(form(g, d.basis[0], d.basis[1]), 0);
}

TEST(ZModuleTest, HermiteOfRedundantGenerators) {
  // (2,0), (0,3), (1,1) span all of Z^2
  ZModule m({qv({"2", "0"}), qv({"0", "3"}), qv({"1", "1"})}, 2);
  EXPECT_EQ(m.rank(), 2u);
  EXPECT_TRUE(m.contains(qv({"1", "0"})));
  EXPECT_TRUE(m.contains(qv({"0", "1"})));
  EXPECT_FALSE(m.contains(qv({"1/2", "0"})));
}

TEST(ZModuleTest, HermiteTransformReproducesBasis) {
  std::vector<QVector> gens{qv({"4", "6", "0"}), qv({"2", "0", "1/2"}), qv({"6", "6", "1/2"})};
  auto h = hermite(gens, 3);
  ASSERT_EQ(h.basis.size(), h.transform.size());
  for (std::size_t r = 0; r < h.basis.size(); ++r) {
    QVector sum = zero_vector(3);
    for (std::size_t i = 0; i < gens.size(); ++i) axpy(sum, Rational(h.transform[r][i]), gens[i]);
    EXPECT_EQ(sum, h.basis[r]);
  }
  // third generator is the sum of the first two
  EXPECT_EQ(h.basis.size(), 2u);
  ASSERT_EQ(h.relations.size(), 1u);
  QVector sum = zero_vector(3);
  for (std::size_t i = 0; i < gens.size(); ++i) axpy(sum, Rational(h.relations[0][i]), gens[i]);
  EXPECT_TRUE(is_zero(sum));
}

TEST(ZModuleTest, ReduceIsCanonicalOnCosets) {
  ZModule m({qv({"2", "1"}), qv({"0", "3"})}, 2);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    QVector v{Rational(d(rng), 2), Rational(d(rng), 3)};
    QVector w = v + Rational(d(rng)) * qv({"2", "1"}) + Rational(d(rng)) * qv({"0", "3"});
    EXPECT_EQ(m.reduce(v), m.reduce(w));
    EXPECT_TRUE(m.contains(v - m.reduce(v)));
  }
}
