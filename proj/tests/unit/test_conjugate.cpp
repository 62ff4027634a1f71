#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nilcurve/catalog.hpp"
#include "nilcurve/conjugate.hpp"
#include "nilcurve/error.hpp"
#include "support.hpp"

using namespace nilcurve;
using namespace nilcurve::test;

namespace {

double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if ((f(lo) > 0) == (f(mid) > 0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<std::pair<double, std::size_t>> positive(const ConjugateReport& r) {
  std::vector<std::pair<double, std::size_t>> out;
  for (const auto& c : r.times)
    if (c.t > 0) out.push_back({c.t, c.multiplicity});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Conjugate, RiemannianH3AgainstScalarOracle) {
  // a0 = 0.6 e1 + 0.8 e3: conjugate at 2πk/α and at 2u/α with tan u = 0.36 u, u > π
  GeodesicSystem sys(h3(), MetricSpec(QMatrix::identity(3)));
  Eigen::VectorXd a0 = Eigen::Vector3d(0.6, 0, 0.8);
  const double alpha = 0.8, pi = std::numbers::pi;
  std::vector<double> expect;
  for (int k = 1; 2 * pi * k / alpha <= 20; ++k) expect.push_back(2 * pi * k / alpha);
  for (int k = 1; k < 4; ++k) {
    double u = bisect_root([](double x) { return std::tan(x) - 0.36 * x; }, k * pi + 1e-9, k * pi + pi / 2 - 1e-9);
    if (2 * u / alpha <= 20) expect.push_back(2 * u / alpha);
  }
  std::sort(expect.begin(), expect.end());

  auto group = make_pseudoH_group(sys);
  auto closed = positive(pseudoH_conjugate_times(group, a0, 20));
  JacobiScanOptions o;
  o.both_directions = false;
  auto numeric = positive(jacobi_conjugate_scan(sys, a0, 20, o));
  ASSERT_EQ(closed.size(), expect.size());
  ASSERT_EQ(numeric.size(), expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) {
    EXPECT_NEAR(closed[i].first, expect[i], 1e-9);
    EXPECT_NEAR(numeric[i].first, expect[i], 1e-6);
    EXPECT_EQ(closed[i].second, 1u);
    EXPECT_EQ(numeric[i].second, 1u);
  }
}

TEST(Conjugate, PurelyCentralVelocityOnH3) {
  // x0 = 0: every 2πk/α is conjugate with multiplicity dim 𝔳 = 2
  GeodesicSystem sys(h3(), MetricSpec(QMatrix::identity(3)));
  auto group = make_pseudoH_group(sys);
  auto cv = cross_validate(group, Eigen::Vector3d(0, 0, 1), 14);
  EXPECT_TRUE(cv.ok);
  auto closed = positive(cv.closed);
  ASSERT_EQ(closed.size(), 2u);
  EXPECT_NEAR(closed[0].first, 2 * std::numbers::pi, 1e-12);
  EXPECT_EQ(closed[0].second, 2u);
}

TEST(Conjugate, SplitGroupTimelikeComplement) {
  // z0 = 0, <x0,x0> = −1: one conjugate time √12 of multiplicity dim 𝔷
  auto e = catalog_entry("split_quaternionic_heisenberg");
  GeodesicSystem sys(e.algebra, e.metrics.front().metric);
  auto group = make_pseudoH_group(sys);
  Eigen::VectorXd a0 = Eigen::VectorXd::Zero(7);
  a0[2] = 1;  // <v3, v3> = −1
  auto cv = cross_validate(group, a0, 8);
  EXPECT_TRUE(cv.ok);
  auto closed = positive(cv.closed);
  ASSERT_EQ(closed.size(), 1u);
  EXPECT_NEAR(closed[0].first, std::sqrt(12.0), 1e-12);
  EXPECT_EQ(closed[0].second, 3u);
}

TEST(Conjugate, SplitGroupCasesCrossValidate) {
  auto e = catalog_entry("split_quaternionic_heisenberg");
  GeodesicSystem sys(e.algebra, e.metrics.front().metric);
  auto group = make_pseudoH_group(sys);
  std::vector<std::vector<double>> velocities{
      {0, 0, 0, 0, 1, 0, 0},          // spacelike center only
      {0.5, 0.2, 0, 0, 1, 0.3, 0},    // spacelike center, elliptic
      {0, 0, 0.9, 0, 0, 0.3, 0},      // timelike center, hyperbolic
      {0, 0, 1, 0, 1, 1, 0},          // null center
      {0.2, 0, 0.9, 0.1, 0, 0.3, 0.2}};
  for (const auto& v : velocities) {
    Eigen::VectorXd a0 = Eigen::Map<const Eigen::VectorXd>(v.data(), 7);
    auto cv = cross_validate(group, a0, 12);
    EXPECT_TRUE(cv.ok) << a0.transpose();
  }
}

TEST(Conjugate, ClosedFormNeedsPseudoH) {
  GeodesicSystem sys(h3(), MetricSpec(qdiag({1, 2, 1})));
  EXPECT_THROW(make_pseudoH_group(sys), PreconditionError);
}

TEST(Conjugate, CentralNullVelocityHasNoConjugatePoints) {
  // a = e3 in flat H3 is orthogonal to [𝔫,𝔫], so ad†_x a = 0
  GeodesicSystem sys(h3(), flat_h3_metric());
  auto r = jacobi_conjugate_scan(sys, Eigen::Vector3d(0, 0, 1), 30);
  EXPECT_TRUE(r.times.empty());
}

TEST(Conjugate, TranscendentalRootSets) {
  RootParams p{1.0, 1.0, 1.0, 0.0};
  // u cot u = 1 has no root in (0, π); later roots solve u cos u = sin u
  auto r = transcendental_roots(RootKind::cot, p, 20);
  ASSERT_FALSE(r.empty());
  for (double t : r) EXPECT_NEAR(std::tan(t / 2), t / 2, 1e-8);
  // sinh u = s u with s = 2
  RootParams h{1.0, 1.0, 1.0, 1.0};
  auto s = transcendental_roots(RootKind::sinh, h, 20);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(std::sinh(s[0]), 2 * s[0], 1e-9);
}
