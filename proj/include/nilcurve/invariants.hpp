#pragma once

// Exact structural identities shared by the verify command and the test suites.

#include <cstdint>
#include <string>
#include <vector>

#include "nilcurve/algebra.hpp"
#include "nilcurve/catalog.hpp"
#include "nilcurve/metric.hpp"

namespace nilcurve {

struct InvariantCheck {
  std::string name;
  bool ok = true;
  std::string detail;  // first failing component
};

struct InvariantReport {
  std::string subject;
  std::vector<InvariantCheck> checks;
  bool ok() const;
};

// BCH associativity and inverses on seeded elements, Witt frame orthogonality,
// ι-isometry, torsion, metric compatibility, Bianchi and pair symmetries.
InvariantReport structural_invariants(const AlgebraSpec& algebra, const MetricSpec& metric, std::uint64_t seed);

// Every tangent plane of the center is homaloidal; H(p,1) entries are Ricci- and scalar-flat.
InvariantReport catalog_properties(const CatalogEntry& entry, const NamedMetric& variant);

}  // namespace nilcurve
