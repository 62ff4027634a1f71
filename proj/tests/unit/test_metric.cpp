#include <gtest/gtest.h>

#include <random>

#include "nilcurve/catalog.hpp"
#include "nilcurve/error.hpp"
#include "nilcurve/metric.hpp"
#include "nilcurve/random_instances.hpp"
#include "support.hpp"

using namespace nilcurve;
using namespace nilcurve::test;

TEST(Metric, RejectsDegenerateGram) {
  EXPECT_THROW(MetricSpec(qdiag({1, 0, 1})), ValidationError);
  QMatrix asym(2, 2);
  asym(0, 0) = 1;
  asym(0, 1) = 1;
  asym(1, 1) = 1;
  EXPECT_THROW(MetricSpec{asym}, ValidationError);
}

TEST(Metric, FlatH3WittFrame) {
  auto metric = flat_h3_metric();
  EXPECT_EQ(signature(metric), (Signature{2, 1}));
  EXPECT_TRUE(is_lorentzian(metric));
  auto f = witt_decomposition(h3(), metric);
  ASSERT_EQ(f.U.size(), 1u);
  EXPECT_TRUE(in_span(f.U, unit_vector(3, 2)));
  EXPECT_TRUE(f.Z.empty());
  ASSERT_EQ(f.V.size(), 1u);
  EXPECT_EQ(metric.inner(f.U[0], f.V[0]), 1);
  EXPECT_EQ(metric.inner(f.V[0], f.V[0]), 0);
  ASSERT_EQ(f.E.size(), 1u);
  EXPECT_TRUE(in_span(f.E, unit_vector(3, 0)));
}

TEST(Metric, RestrictedSignatureCountsNullDirections) {
  auto rs = restricted_signature(flat_h3_metric(), {unit_vector(3, 2)});
  EXPECT_EQ(rs.null, 1u);
  EXPECT_EQ(rs.p + rs.q, 0u);
}

TEST(Metric, AdDaggerIsTheAdjoint) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto in = random_two_step(seed);
    const std::size_t n = in.algebra.dim();
    auto x = random_rational_vector(n, rng), u = random_rational_vector(n, rng), y = random_rational_vector(n, rng);
    EXPECT_EQ(in.metric.inner(ad_dagger(x, u, in.algebra, in.metric), y), in.metric.inner(u, in.algebra.bracket(x, y)));
  }
}

TEST(Metric, WittFrameSurvivesBasisChange) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto in = random_two_step(seed);
    auto f = witt_decomposition(in.algebra, in.metric);
    auto rc = restricted_signature(in.metric, in.algebra.center());
    EXPECT_EQ(f.U.size(), rc.null);
    EXPECT_EQ(f.Z.size(), rc.p + rc.q);
    EXPECT_EQ(f.U.size() + f.Z.size() + f.V.size() + f.E.size(), in.algebra.dim());
  }
}

TEST(Metric, PseudoHTypeRecognition) {
  EXPECT_TRUE(is_pseudoH(h3(), MetricSpec(QMatrix::identity(3))));
  // J² = −|z|² fails when the complement is scaled unevenly
  EXPECT_FALSE(is_pseudoH(h3(), MetricSpec(qdiag({1, 2, 1}))));
  EXPECT_THROW(is_pseudoH(h3(), flat_h3_metric()), PreconditionError);
}

TEST(Metric, Nonsingularity) {
  EXPECT_TRUE(is_nonsingular(h3()));
  EXPECT_TRUE(is_nonsingular(catalog_entry("heisenberg_2").algebra));
  EXPECT_TRUE(is_nonsingular(catalog_entry("quaternionic_heisenberg").algebra));
  EXPECT_FALSE(is_nonsingular(catalog_entry("h_p_1_2").algebra));
  // an indefinite center contains null z with J_z singular
  EXPECT_FALSE(is_nonsingular(catalog_entry("split_quaternionic_heisenberg").algebra));
}

TEST(Metric, JMapOfHp1InterchangesVAndE) {
  auto e = catalog_entry("h_p_1_2");
  const auto& metric = e.metrics.front().metric;
  auto f = witt_decomposition(e.algebra, metric);
  ASSERT_FALSE(f.U.empty());
  const std::size_t dv = f.V.size(), de = f.E.size();
  for (const auto& u : f.U) {
    QMatrix j = j_map(u, f, e.algebra, metric);
    ASSERT_EQ(j.rows(), dv + de);
    for (std::size_t c = 0; c < dv; ++c)
      for (std::size_t r = 0; r < dv; ++r) EXPECT_EQ(j(r, c), 0) << "V -> V block";
    for (std::size_t c = dv; c < dv + de; ++c)
      for (std::size_t r = dv; r < dv + de; ++r) EXPECT_EQ(j(r, c), 0) << "E -> E block";
    EXPECT_FALSE(j.is_zero());
  }
}
