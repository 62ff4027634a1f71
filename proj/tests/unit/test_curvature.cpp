#include <gtest/gtest.h>

#include "nilcurve/catalog.hpp"
#include "nilcurve/curvature.hpp"
#include "nilcurve/random_instances.hpp"
#include "support.hpp"

using namespace nilcurve;
using namespace nilcurve::test;

namespace {

// Koszul formula solved against the Gram matrix:
// 2<∇_x y, z> = <[x,y],z> − <[y,z],x> + <[z,x],y>.
QVector koszul_oracle(const AlgebraSpec& a, const MetricSpec& g, std::size_t i, std::size_t j) {
  const std::size_t n = a.dim();
  auto e = [n](std::size_t k) { return unit_vector(n, k); };
  QVector rhs(n);
  for (std::size_t k = 0; k < n; ++k)
    rhs[k] = Rational(1, 2) * (g.inner(a.bracket(e(i), e(j)), e(k)) - g.inner(a.bracket(e(j), e(k)), e(i)) +
                               g.inner(a.bracket(e(k), e(i)), e(j)));
  return g.gram_inverse() * rhs;
}

Rational lowered(const CurvatureTensor& r, const MetricSpec& g, std::size_t i, std::size_t j, std::size_t k,
                 std::size_t l) {
  return g.inner(r(i, j, k), unit_vector(g.dim(), l));
}

}  // namespace

TEST(Curvature, ConnectionMatchesKoszulOracle) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto in = random_two_step(seed);
    auto nabla = connection(in.algebra, in.metric);
    for (std::size_t i = 0; i < in.algebra.dim(); ++i)
      for (std::size_t j = 0; j < in.algebra.dim(); ++j)
        ASSERT_EQ(nabla(i, j), koszul_oracle(in.algebra, in.metric, i, j)) << "seed " << seed;
  }
}

TEST(Curvature, FlatH3IsExactlyFlat) {
  auto r = riemann(h3(), flat_h3_metric());
  EXPECT_TRUE(r.is_zero());
  EXPECT_TRUE(is_flat(h3(), flat_h3_metric()));
}

TEST(Curvature, RiemannianH3Components) {
  MetricSpec g(QMatrix::identity(3));
  auto r = riemann(h3(), g);
  EXPECT_EQ(lowered(r, g, 0, 1, 1, 0), Rational(-3, 4));
  EXPECT_EQ(lowered(r, g, 0, 2, 2, 0), Rational(1, 4));
  EXPECT_EQ(lowered(r, g, 1, 2, 2, 1), Rational(1, 4));
  auto ric = ricci(r);
  EXPECT_EQ(ric(0, 0), Rational(-1, 2));
  EXPECT_EQ(ric(1, 1), Rational(-1, 2));
  EXPECT_EQ(ric(2, 2), Rational(1, 2));
  EXPECT_EQ(scalar_curvature(ric, g), Rational(-1, 2));
  EXPECT_EQ(constant_curvature_check(r, g).verdict, ConstantCurvature::not_constant);
}

TEST(Curvature, SectionalNumeratorOfBasisPlane) {
  MetricSpec g(QMatrix::identity(3));
  auto r = riemann(h3(), g);
  EXPECT_EQ(sectional_numerator(r, g, unit_vector(3, 0), unit_vector(3, 1)), Rational(-3, 4));
  EXPECT_FALSE(is_homaloidal(r, g, unit_vector(3, 0), unit_vector(3, 1)));
}

TEST(Curvature, AbelianIsFlat) {
  auto a = AlgebraSpec::abelian(3);
  MetricSpec g(qdiag({1, -1, 1}));
  auto r = riemann(a, g);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(constant_curvature_check(r, g).verdict, ConstantCurvature::flat);
}

TEST(Curvature, SufficientConditionInstancesAreFlat) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto in = random_flat_instance(seed, 4 + seed % 7);
    auto f = witt_decomposition(in.algebra, in.metric);
    ASSERT_TRUE(flatness_sufficient_condition(in.algebra, f));
    EXPECT_TRUE(is_flat(in.algebra, in.metric)) << "seed " << seed;
  }
}

TEST(Curvature, CenterPlanesHomaloidalAcrossCatalog) {
  for (const auto& e : shipped_catalog())
    for (const auto& m : e.metrics) {
      auto r = riemann(e.algebra, m.metric);
      EXPECT_TRUE(is_flat_submanifold(r, m.metric, e.algebra.center())) << e.name << "/" << m.name;
    }
}

TEST(Curvature, FlatMetricExistence) {
  // dim 𝔷 = 1 < ⌈3/2⌉ for H3, even though a flat metric with E != 0 exists
  EXPECT_FALSE(flat_metric_exists(h3()).dimension_condition);
  auto f = flat_family(2, 2);
  auto w = flat_metric_exists(f.algebra);
  EXPECT_TRUE(w.dimension_condition);
  ASSERT_TRUE(w.metric.has_value());
  EXPECT_TRUE(is_flat(f.algebra, *w.metric));
}
