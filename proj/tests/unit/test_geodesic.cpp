#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nilcurve/catalog.hpp"
#include "nilcurve/curvature.hpp"
#include "nilcurve/error.hpp"
#include "nilcurve/geodesic.hpp"
#include "nilcurve/random_instances.hpp"
#include "support.hpp"

using namespace nilcurve;
using namespace nilcurve::test;

TEST(Geodesic, RiemannianH3VelocityRotates) {
  // ȧ = ad†_a a gives a(t) = (cos zt, sin zt, z) for a(0) = (1, 0, z)
  GeodesicSystem sys(h3(), MetricSpec(QMatrix::identity(3)));
  const double z = 0.7;
  Eigen::VectorXd a0(3);
  a0 << 1, 0, z;
  auto tr = integrate_geodesic(sys, a0, -5, 5);
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const double t = tr.times[i];
    Eigen::Vector3d expect(std::cos(z * t), std::sin(z * t), z);
    EXPECT_LT((tr.frame_velocity[i] - expect).norm(), 1e-9) << "t = " << t;
  }
}

TEST(Geodesic, CentralDirectionIsAStraightLine) {
  GeodesicSystem sys(h3(), flat_h3_metric());
  Eigen::VectorXd a0 = Eigen::Vector3d(0, 0, 1);
  auto tr = integrate_geodesic(sys, a0, 0, 4);
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    EXPECT_LT((tr.log_position[i] - tr.times[i] * a0).norm(), 1e-12);
}

TEST(Geodesic, EnergyAndCentralMomentaConserved) {
  for (const auto& e : shipped_catalog())
    for (const auto& m : e.metrics) {
      GeodesicSystem sys(e.algebra, m.metric);
      std::mt19937_64 rng(17);
      std::uniform_real_distribution<double> u(-1, 1);
      Eigen::VectorXd a0(e.algebra.dim());
      for (auto& x : a0) x = u(rng);
      // keep the hyperbolic growth of indefinite centers small
      a0 *= 0.3;
      auto tr = integrate_geodesic(sys, a0, -10, 10);
      auto ints = first_integrals(tr, m.metric, e.algebra.center());
      const std::size_t i0 = tr.index_of_time(0);
      for (std::size_t i = 0; i < tr.times.size(); ++i) {
        EXPECT_NEAR(sys.energy(tr.frame_velocity[i]), tr.energy, 1e-9) << e.name << "/" << m.name;
        for (std::size_t k = 0; k < ints[i].size(); ++k) EXPECT_NEAR(ints[i][k], ints[i0][k], 1e-9);
      }
    }
}

TEST(Geodesic, OneParameterSubgroupCriterion) {
  auto a = h3();
  auto g = flat_h3_metric();
  auto frame = witt_decomposition(a, g);
  auto nabla = connection(a, g);
  // U ⊕ E = span{e3, e1}
  for (const auto& x : {qv({"1", "0", "2"}), qv({"0", "0", "1"}), qv({"3", "0", "0"})}) {
    EXPECT_TRUE(is_geodesic_one_param(x, frame));
    EXPECT_TRUE(one_param_geodesic_exact(x, nabla));
  }
  EXPECT_FALSE(one_param_geodesic_exact(qv({"1", "1", "0"}), nabla));
}

TEST(Geodesic, CentralTranslationCertificate) {
  GeodesicSystem sys(h3(), MetricSpec(QMatrix::identity(3)));
  Eigen::VectorXd phi = Eigen::Vector3d(0, 0, 2);
  auto cert = one_param_certificate(sys, phi);
  ASSERT_TRUE(cert.has_value());
  EXPECT_NEAR(cert->omega, 2.0, 1e-15);
  EXPECT_LT(cert->residual, 1e-10);
  // null translations carry no period
  GeodesicSystem flat(h3(), flat_h3_metric());
  EXPECT_FALSE(one_param_certificate(flat, Eigen::Vector3d(0, 0, 1)).has_value());
}

TEST(Geodesic, PeriodSearchFindsCentralPeriod) {
  GeodesicSystem sys(h3(), MetricSpec(QMatrix::identity(3)));
  PeriodSearchOptions o;
  // the positive unit sphere of a definite metric
  o.causal = CausalSearch::timelike;
  o.grid_points = 200;
  o.omega_max = 3;
  auto certs = find_periods(sys, Eigen::Vector3d(0, 0, 1), o);
  ASSERT_FALSE(certs.empty());
  bool has_unit = false;
  for (const auto& c : certs) {
    EXPECT_LT(c.residual, 1e-8);
    if (std::abs(c.omega - 1) < 1e-8) has_unit = true;
  }
  EXPECT_TRUE(has_unit);
}

TEST(Geodesic, RejectsBadSpans) {
  GeodesicSystem sys(h3(), MetricSpec(QMatrix::identity(3)));
  EXPECT_THROW(integrate_geodesic(sys, Eigen::Vector3d(1, 0, 0), 1, 2), ValidationError);
  EXPECT_THROW(integrate_geodesic(sys, Eigen::Vector2d(1, 0), 0, 2), ValidationError);
}

TEST(Geodesic, FlatClassGroupsAreGeodesicallyConnected) {
  // 100 random point pairs over 10 flat instances; p⁻¹q reached from the identity.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  std::size_t reached = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto inst = random_flat_instance(seed, 4 + seed % 5);
    GeodesicSystem sys(inst.algebra, inst.metric);
    const auto n = static_cast<Eigen::Index>(sys.dim());
    for (int pair = 0; pair < 10; ++pair) {
      Eigen::VectorXd p(n), q(n);
      for (Eigen::Index i = 0; i < n; ++i) p[i] = unit(rng), q[i] = unit(rng);
      Eigen::VectorXd target = bch_product(inst.algebra, Eigen::VectorXd(-p), q);
      auto shot = shoot_geodesic(sys, target);
      ASSERT_TRUE(shot) << "seed " << seed << " pair " << pair;
      auto end = propagate(sys, {shot->velocity, Eigen::VectorXd::Zero(n)}, 0.0, 1.0);
      EXPECT_LT((bch_product(inst.algebra, p, end.position) - q).norm(), 1e-8 * std::max(1.0, target.norm()));
      ++reached;
    }
  }
  EXPECT_EQ(reached, 100u);
}
