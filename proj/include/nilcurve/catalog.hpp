#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilcurve/algebra.hpp"
#include "nilcurve/metric.hpp"

namespace nilcurve {

struct PropertyFlags {
  std::optional<bool> flat, ricci_flat, scalar_flat, pseudoH, lorentzian, degenerate_center, nonsingular;
};

struct NamedMetric {
  std::string name;
  MetricSpec metric;
  PropertyFlags expected;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  AlgebraSpec algebra;
  std::vector<NamedMetric> metrics;

  const NamedMetric& metric(const std::string& variant) const;
};

// Evaluates every flag (pseudoH only when the center is nondegenerate).
PropertyFlags compute_flags(const AlgebraSpec& algebra, const MetricSpec& metric);
// Throws ValidationError naming the first expected flag that does not hold.
void verify_entry(const CatalogEntry& entry);

// [x_i, y_i] = z on x_1..x_k, y_1..y_k, z.
CatalogEntry heisenberg(std::size_t k);
// [x_i, y] = z_i on x_1..x_p, y, z_1..z_p with <x_i, z_j> = δ_ij, <y, y> = 1.
CatalogEntry h_p_1(std::size_t p);
CatalogEntry quaternionic_heisenberg();

// Two-step algebra on 𝔳 ⊕ 𝔷 with <J_k x, y> = <z_k, [x, y]>; metric g_v ⊕ g_z.
CatalogEntry algebra_from_J(const std::string& name, const std::vector<QMatrix>& js, const QMatrix& g_v,
                            const QMatrix& g_z);
// As above after checking J_a J_b + J_b J_a = −2 g_z(a, b) Id and skewness.
CatalogEntry pseudoH_from_J(const std::string& name, const std::vector<QMatrix>& js, const QMatrix& g_v,
                            const QMatrix& g_z);

// V × V → U random rational brackets, <u_i, v_j> = δ_ij, E = Z = {0}.
CatalogEntry flat_family(std::size_t dim_u, std::size_t dim_v, std::uint64_t seed = 7);
// Product with an abelian factor carrying a nondegenerate Gram matrix.
CatalogEntry product_with_abelian(const CatalogEntry& entry, const std::string& variant, const QMatrix& factor_gram);

std::vector<std::string> catalog_names();
CatalogEntry catalog_entry(const std::string& name);  // verified on construction
std::vector<CatalogEntry> shipped_catalog();

}  // namespace nilcurve
