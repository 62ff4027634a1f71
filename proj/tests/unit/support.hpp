#pragma once

#include <initializer_list>
#include <string>

#include "nilcurve/algebra.hpp"
#include "nilcurve/exact.hpp"
#include "nilcurve/metric.hpp"

namespace nilcurve::test {

inline QVector qv(std::initializer_list<const char*> entries) {
  QVector v;
  for (const char* e : entries) v.push_back(parse_rational(e));
  return v;
}

inline QMatrix qdiag(std::initializer_list<int> entries) {
  QMatrix m(entries.size(), entries.size());
  std::size_t i = 0;
  for (int e : entries) {
    m(i, i) = e;
    ++i;
  }
  return m;
}

// [e1, e2] = e3
inline AlgebraSpec h3() { return AlgebraSpec::from_brackets({"e1", "e2", "e3"}, {{0, 1, qv({"0", "0", "1"})}}); }

// Null center paired with e2.
inline MetricSpec flat_h3_metric() {
  QMatrix g(3, 3);
  g(0, 0) = 1;
  g(1, 2) = 1;
  g(2, 1) = 1;
  return MetricSpec(g);
}

}  // namespace nilcurve::test
