#pragma once

// Seeded random instances for the property suites.

#include <cstdint>
#include <random>

#include "nilcurve/algebra.hpp"
#include "nilcurve/metric.hpp"

namespace nilcurve {

struct Instance {
  AlgebraSpec algebra;
  MetricSpec metric;
};

// Same geometry written in the basis given by the columns of p.
Instance change_basis(const Instance& instance, const QMatrix& p);

// Small integer matrix with determinant ±1.
QMatrix random_unimodular(std::size_t n, std::mt19937_64& rng);

// [𝔫,𝔫] ⊆ U and E = {0}, in a scrambled basis; 4 <= dim <= 10.
Instance random_flat_instance(std::uint64_t seed, std::size_t dim);

// Arbitrary 2-step algebra with a random nondegenerate metric; 3 <= dim <= max_dim.
Instance random_two_step(std::uint64_t seed, std::size_t max_dim = 7);

QVector random_rational_vector(std::size_t n, std::mt19937_64& rng, long range = 3, long max_den = 3);

}  // namespace nilcurve
