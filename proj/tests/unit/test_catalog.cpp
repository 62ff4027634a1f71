#include <gtest/gtest.h>

#include "nilcurve/catalog.hpp"
#include "nilcurve/curvature.hpp"
#include "nilcurve/error.hpp"
#include "nilcurve/invariants.hpp"
#include "support.hpp"

using namespace nilcurve;
using namespace nilcurve::test;

namespace {

QMatrix rot90() {
  QMatrix j(2, 2);
  j(0, 1) = -1;
  j(1, 0) = 1;
  return j;
}

}  // namespace

TEST(Catalog, EveryEntryLoadsAndVerifies) {
  auto names = catalog_names();
  EXPECT_GE(names.size(), 10u);
  for (const auto& n : names) EXPECT_NO_THROW(verify_entry(catalog_entry(n))) << n;
}

TEST(Catalog, HeisenbergVariants) {
  auto e = heisenberg(1);
  auto flat = compute_flags(e.algebra, e.metric("lorentzian_null_center").metric);
  EXPECT_TRUE(*flat.flat);
  EXPECT_TRUE(*flat.degenerate_center);
  auto riem = compute_flags(e.algebra, e.metric("riemannian").metric);
  EXPECT_TRUE(*riem.pseudoH);
  EXPECT_FALSE(*riem.flat);
  EXPECT_EQ(e.algebra.dim(), 3u);
  EXPECT_EQ(heisenberg(3).algebra.dim(), 7u);
}

TEST(Catalog, HP1IsRicciAndScalarFlat) {
  for (std::size_t p : {2u, 3u}) {
    auto e = h_p_1(p);
    const auto& m = e.metrics.front().metric;
    auto ric = ricci(riemann(e.algebra, m));
    EXPECT_TRUE(ric.is_zero());
    EXPECT_EQ(scalar_curvature(ric, m), 0);
    EXPECT_FALSE(is_flat(e.algebra, m));
    auto frame = witt_decomposition(e.algebra, m);
    // [V,V] = [E,E] = 0
    for (const auto& x : frame.V)
      for (const auto& y : frame.V) EXPECT_TRUE(is_zero(e.algebra.bracket(x, y)));
    for (const auto& x : frame.E)
      for (const auto& y : frame.E) EXPECT_TRUE(is_zero(e.algebra.bracket(x, y)));
  }
}

TEST(Catalog, QuaternionicHeisenberg) {
  auto e = quaternionic_heisenberg();
  EXPECT_EQ(e.algebra.center().size(), 3u);
  const auto& m = e.metric("definite").metric;
  EXPECT_TRUE(is_pseudoH(e.algebra, m));
  EXPECT_FALSE(is_flat(e.algebra, m));
  EXPECT_FALSE(flatness_sufficient_condition(e.algebra, witt_decomposition(e.algebra, m)));
}

TEST(Catalog, PseudoHFromJReconstructsH3) {
  auto e = pseudoH_from_J("h3_from_J", {rot90()}, QMatrix::identity(2), QMatrix::identity(1));
  auto h = heisenberg(1);
  const auto& m = h.metric("riemannian").metric;
  EXPECT_EQ(e.metrics.front().metric.gram(), m.gram());
  // same brackets up to sign of the center
  auto b = e.algebra.structure(0, 1);
  EXPECT_TRUE(b == h.algebra.structure(0, 1) || b == -h.algebra.structure(0, 1));
}

TEST(Catalog, PseudoHFromJRejectsSignMismatch) {
  // J² = −I against a negative definite center needs J² = +I
  try {
    pseudoH_from_J("bad", {rot90()}, QMatrix::identity(2), qdiag({-1}));
    FAIL() << "accepted";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("J_1 J_1"), std::string::npos) << e.what();
  }
}

TEST(Catalog, FlatFamilyAndProducts) {
  auto f = flat_family(2, 2);
  const auto& m = f.metrics.front().metric;
  EXPECT_FALSE(f.algebra.is_abelian());
  EXPECT_TRUE(is_flat(f.algebra, m));
  auto p = product_with_abelian(f, f.metrics.front().name, qdiag({1, -1}));
  EXPECT_TRUE(is_flat(p.algebra, p.metrics.front().metric));
  auto trivial = flat_family(1, 1);
  EXPECT_TRUE(trivial.algebra.is_abelian());
  EXPECT_THROW(flat_family(2, 3), ValidationError);
}

TEST(Catalog, StructuralInvariantsHold) {
  for (const auto& e : shipped_catalog())
    for (const auto& m : e.metrics) {
      auto r = structural_invariants(e.algebra, m.metric, 5);
      for (const auto& c : r.checks) EXPECT_TRUE(c.ok) << e.name << "/" << m.name << " " << c.name << ": " << c.detail;
      auto p = catalog_properties(e, m);
      EXPECT_TRUE(p.ok()) << p.subject;
    }
}
