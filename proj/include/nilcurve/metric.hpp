#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "nilcurve/algebra.hpp"
#include "nilcurve/exact.hpp"

namespace nilcurve {

// Nondegenerate symmetric Gram matrix on the algebra basis.
class MetricSpec {
 public:
  explicit MetricSpec(QMatrix gram);

  std::size_t dim() const { return gram_.rows(); }
  const QMatrix& gram() const { return gram_; }
  const QMatrix& gram_inverse() const { return gram_inv_; }
  const Eigen::MatrixXd& gram_d() const { return gram_d_; }
  const Eigen::MatrixXd& gram_inverse_d() const { return gram_inv_d_; }

  Rational inner(const QVector& x, const QVector& y) const { return form(gram_, x, y); }
  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const { return x.dot(gram_d_ * y); }

  MetricSpec negated() const;

 private:
  QMatrix gram_;
  QMatrix gram_inv_;
  Eigen::MatrixXd gram_d_;
  Eigen::MatrixXd gram_inv_d_;
};

struct Signature {
  std::size_t p = 0;  // positive
  std::size_t q = 0;  // negative
  bool operator==(const Signature& o) const { return p == o.p && q == o.q; }
};

Signature signature(const MetricSpec& metric);
// Signature of the form restricted to span(subspace); zero directions in `null`.
struct RestrictedSignature {
  std::size_t p = 0;
  std::size_t q = 0;
  std::size_t null = 0;
};
RestrictedSignature restricted_signature(const MetricSpec& metric, const std::vector<QVector>& subspace);

CausalType causal_type(const QVector& x, const MetricSpec& metric);
// Numeric variant: null when |<x,x>| <= tol * |x|^2.
CausalType causal_type(const Eigen::VectorXd& x, const MetricSpec& metric, double tol);

bool is_lorentzian(const MetricSpec& metric);

// 𝔫 = U ⊕ Z ⊕ V ⊕ E with U the radical of the form on the center.
struct WittFrame {
  std::size_t dim = 0;
  std::vector<QVector> U, Z, V, E;
  QMatrix iota;

  std::vector<QVector> center_basis() const;      // U then Z
  std::vector<QVector> complement_basis() const;  // V then E
  std::vector<QVector> ordered_basis() const;     // U, Z, V, E
  bool center_degenerate() const { return !U.empty(); }
};

WittFrame witt_decomposition(const AlgebraSpec& algebra, const MetricSpec& metric);

// Splits x into its U⊕Z part and V⊕E part.
std::pair<QVector, QVector> split_center(const WittFrame& frame, const QVector& x);

// Unique w with <w, y> = <u, [x, y]> for all y.
QVector ad_dagger(const QVector& x, const QVector& u, const AlgebraSpec& algebra, const MetricSpec& metric);
Eigen::VectorXd ad_dagger(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const AlgebraSpec& algebra,
                          const MetricSpec& metric);

// Matrix of j(a)x = ι ad†_x ι a in the basis V ⊕ E of the frame.
QMatrix j_map(const QVector& a, const WittFrame& frame, const AlgebraSpec& algebra, const MetricSpec& metric);

bool is_pseudoH(const AlgebraSpec& algebra, const MetricSpec& metric);
bool is_nonsingular(const AlgebraSpec& algebra);

// Coordinates of the bracket [x, y] = Σ_k <C_k x, y> z_k restricted to a complement,
// as skew matrices C_k over the complement basis; z_k the center basis.
std::vector<QMatrix> bracket_forms(const AlgebraSpec& algebra, const std::vector<QVector>& complement,
                                   const std::vector<QVector>& center);

}  // namespace nilcurve
