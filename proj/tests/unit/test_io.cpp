#include <gtest/gtest.h>

#include "nilcurve/catalog.hpp"
#include "nilcurve/error.hpp"
#include "nilcurve/io.hpp"
#include "support.hpp"

using namespace nilcurve;
using namespace nilcurve::test;

TEST(Io, AlgebraAndMetricRoundTrip) {
  for (const auto& e : shipped_catalog()) {
    auto a = algebra_from_json(Json::parse(algebra_to_json(e.algebra).dump()));
    EXPECT_EQ(a.labels(), e.algebra.labels());
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) EXPECT_EQ(a.structure(i, j), e.algebra.structure(i, j));
    for (const auto& m : e.metrics)
      EXPECT_EQ(metric_from_json(Json::parse(metric_to_json(m.metric).dump())).gram(), m.metric.gram());
  }
}

TEST(Io, LatticeRoundTrip) {
  LatticeSpec s;
  s.generators = {{qv({"1", "0", "0"})}, {qv({"0", "1", "0"})}, {qv({"0", "0", "1/2"})}};
  s.box = 3;
  auto back = lattice_from_json(lattice_to_json(s), 3);
  ASSERT_EQ(back.generators.size(), 3u);
  EXPECT_EQ(back.generators[2].log, s.generators[2].log);
  EXPECT_EQ(back.box, 3);
}

TEST(Io, RejectsMalformedInput) {
  EXPECT_THROW(algebra_from_json(Json::parse(R"({"dim": 2, "brackets": [{"i": 0, "j": 5, "coeffs": {}}]})")),
               ValidationError);
  EXPECT_THROW(algebra_from_json(Json::parse(R"({"brackets": []})")), ValidationError);
  EXPECT_THROW(metric_from_json(Json::parse(R"({"gram": [["1", "0"], ["1"]]})")), ValidationError);
  EXPECT_THROW(metric_from_json(Json::parse(R"({"gram": [["1", "x"], ["0", "1"]]})")), ValidationError);
  EXPECT_THROW(lattice_from_json(Json::parse(R"({"generators": [["1"]]})"), 3), ValidationError);
}

TEST(Io, BothBracketOrdersMustAgree) {
  auto ok = Json::parse(
      R"({"dim": 3, "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}, {"i": 1, "j": 0, "coeffs": {"2": "-1"}}]})");
  EXPECT_NO_THROW(algebra_from_json(ok));
  auto bad = Json::parse(
      R"({"dim": 3, "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}, {"i": 1, "j": 0, "coeffs": {"2": "1"}}]})");
  EXPECT_THROW(algebra_from_json(bad), ValidationError);
}

TEST(Io, DoubleFormatting) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2), "2");
}
