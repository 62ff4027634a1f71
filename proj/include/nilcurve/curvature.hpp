#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilcurve/algebra.hpp"
#include "nilcurve/metric.hpp"

namespace nilcurve {

// ∇_{e_i} e_j on the left-invariant frame.
class ConnectionTable {
 public:
  explicit ConnectionTable(std::vector<std::vector<QVector>> table) : table_(std::move(table)) {}

  std::size_t dim() const { return table_.size(); }
  const QVector& operator()(std::size_t i, std::size_t j) const { return table_[i][j]; }
  QVector apply(const QVector& x, const QVector& y) const;  // ∇_x y
  bool is_zero() const;

  // Numeric copy: gamma[i](k, j) = k-th component of ∇_{e_i} e_j.
  std::vector<Eigen::MatrixXd> to_double() const;

 private:
  std::vector<std::vector<QVector>> table_;
};

// R(e_i, e_j) e_k with R(x,y)z = ∇_x∇_y z − ∇_y∇_x z − ∇_[x,y] z.
class CurvatureTensor {
 public:
  explicit CurvatureTensor(std::vector<std::vector<std::vector<QVector>>> r) : r_(std::move(r)) {}

  std::size_t dim() const { return r_.size(); }
  const QVector& operator()(std::size_t i, std::size_t j, std::size_t k) const { return r_[i][j][k]; }
  QVector apply(const QVector& x, const QVector& y, const QVector& z) const;
  bool is_zero() const;

  // rop[k](l, j): l-th component of R(e_j, a) a is assembled by the caller; this
  // gives the numeric tensor r[i][j](l, k) = l-th component of R(e_i, e_j) e_k.
  std::vector<std::vector<Eigen::MatrixXd>> to_double() const;

 private:
  std::vector<std::vector<std::vector<QVector>>> r_;
};

ConnectionTable connection(const AlgebraSpec& algebra, const MetricSpec& metric);
CurvatureTensor riemann(const AlgebraSpec& algebra, const ConnectionTable& nabla);
CurvatureTensor riemann(const AlgebraSpec& algebra, const MetricSpec& metric);

Rational sectional_numerator(const CurvatureTensor& r, const MetricSpec& metric, const QVector& x, const QVector& y);
bool is_homaloidal(const CurvatureTensor& r, const MetricSpec& metric, const QVector& x, const QVector& y);
// Every tangent plane of span(basis) is homaloidal, decided on all restricted components.
bool is_flat_submanifold(const CurvatureTensor& r, const MetricSpec& metric, const std::vector<QVector>& basis);

QMatrix ricci(const CurvatureTensor& r);
Rational scalar_curvature(const QMatrix& ricci_matrix, const MetricSpec& metric);

bool is_flat(const AlgebraSpec& algebra, const MetricSpec& metric);
// [𝔫,𝔫] ⊆ U and E = {0}
bool flatness_sufficient_condition(const AlgebraSpec& algebra, const WittFrame& frame);

enum class ConstantCurvature { flat, constant_nonzero, not_constant };
const char* to_string(ConstantCurvature c);
struct ConstantCurvatureResult {
  ConstantCurvature verdict;
  std::optional<Rational> value;  // the constant when R = K R_0
};
ConstantCurvatureResult constant_curvature_check(const CurvatureTensor& r, const MetricSpec& metric);

struct FlatMetricWitness {
  bool dimension_condition = false;  // dim 𝔷 ≥ ⌈n/2⌉
  std::optional<MetricSpec> metric;  // flat metric with [𝔫,𝔫] ⊆ U, E = {0}
  std::string note;
};
FlatMetricWitness flat_metric_exists(const AlgebraSpec& algebra);

}  // namespace nilcurve
