#pragma once

// Finitely generated Z-submodules of Q^n in Hermite normal form.

#include <optional>
#include <vector>

#include "nilcurve/exact.hpp"

namespace nilcurve {

using ZVector = std::vector<mpz_class>;

struct HermiteResult {
  std::vector<QVector> basis;           // echelon rows, positive pivots, reduced above
  std::vector<std::size_t> pivots;
  std::vector<ZVector> transform;       // basis[r] = Σ_i transform[r][i] * generator_i
  std::vector<ZVector> relations;       // Z-basis of {c : Σ c_i generator_i = 0}
};

HermiteResult hermite(const std::vector<QVector>& generators, std::size_t dim);

class ZModule {
 public:
  ZModule() = default;
  ZModule(const std::vector<QVector>& generators, std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<QVector>& basis() const { return basis_; }

  bool contains(const QVector& v) const { return coordinates(v).has_value(); }
  std::optional<ZVector> coordinates(const QVector& v) const;
  // Canonical representative of v + M: 0 <= v[pivot] < pivot entry on every pivot column.
  QVector reduce(const QVector& v) const;

 private:
  std::size_t dim_ = 0;
  std::vector<QVector> basis_;
  std::vector<std::size_t> pivots_;
};

mpz_class floor_div(const Rational& q);

}  // namespace nilcurve
