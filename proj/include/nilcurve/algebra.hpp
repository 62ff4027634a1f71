#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "nilcurve/exact.hpp"

namespace nilcurve {

class MetricSpec;

// 2-step nilpotent Lie algebra over a named basis. structure(i, j) holds
// the coordinates of [e_i, e_j]. Validated on construction.
class AlgebraSpec {
 public:
  AlgebraSpec(std::vector<std::string> labels, std::vector<std::vector<QVector>> structure,
              bool declared_irrational = false);

  // Convenience: dim n, brackets given as (i, j, [e_i,e_j]) triples with i != j.
  struct Bracket {
    std::size_t i;
    std::size_t j;
    QVector value;
  };
  static AlgebraSpec from_brackets(std::vector<std::string> labels, const std::vector<Bracket>& brackets);
  static AlgebraSpec abelian(std::size_t dim);

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const QVector& structure(std::size_t i, std::size_t j) const { return structure_[i][j]; }
  bool declared_irrational() const { return declared_irrational_; }
  bool is_abelian() const;

  QVector bracket(const QVector& x, const QVector& y) const;
  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  // Matrix of ad_x: column j is [x, e_j].
  QMatrix ad(const QVector& x) const;
  Eigen::MatrixXd ad(const Eigen::VectorXd& x) const;

  std::vector<QVector> center() const;
  std::vector<QVector> derived_subalgebra() const;

 private:
  void validate() const;

  std::vector<std::string> labels_;
  std::vector<std::vector<QVector>> structure_;
  std::vector<Eigen::MatrixXd> structure_d_;  // structure_d_[k](i, j) = c_ij^k
  bool declared_irrational_;
};

// exp(x), stored by its logarithm.
struct GroupElement {
  QVector log;

  static GroupElement identity(std::size_t dim) { return {zero_vector(dim)}; }
  bool operator==(const GroupElement& other) const { return log == other.log; }
};

// log(exp(x) exp(y)) = x + y + [x,y]/2
GroupElement bch_product(const AlgebraSpec& algebra, const GroupElement& g, const GroupElement& h);
GroupElement group_inverse(const GroupElement& g);
GroupElement group_power(const AlgebraSpec& algebra, const GroupElement& g, long exponent);
Eigen::VectorXd bch_product(const AlgebraSpec& algebra, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

enum class CausalType { timelike, null, spacelike };
const char* to_string(CausalType type);

// Causal type of t -> exp(tx), which equals that of x.
CausalType exp_causal_type(const QVector& x, const MetricSpec& metric);

}  // namespace nilcurve
