#include "nilcurve/algebra.hpp"

#include <sstream>

#include "nilcurve/error.hpp"
#include "nilcurve/metric.hpp"

namespace nilcurve {

AlgebraSpec::AlgebraSpec(std::vector<std::string> labels, std::vector<std::vector<QVector>> structure,
                         bool declared_irrational)
    : labels_(std::move(labels)), structure_(std::move(structure)), declared_irrational_(declared_irrational) {
  validate();
  const std::size_t n = dim();
  structure_d_.assign(n, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        structure_d_[k](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = structure_[i][j][k].get_d();
}

AlgebraSpec AlgebraSpec::from_brackets(std::vector<std::string> labels, const std::vector<Bracket>& brackets) {
  const std::size_t n = labels.size();
  std::vector<std::vector<QVector>> c(n, std::vector<QVector>(n, zero_vector(n)));
  for (const auto& b : brackets) {
    if (b.i >= n || b.j >= n || b.value.size() != n)
      throw ValidationError("bracket index or length out of range");
    if (b.i == b.j) {
      if (!is_zero(b.value)) throw ValidationError("[e_i, e_i] must vanish");
      continue;
    }
    c[b.i][b.j] = b.value;
    c[b.j][b.i] = -b.value;
  }
  return AlgebraSpec(std::move(labels), std::move(c));
}

AlgebraSpec AlgebraSpec::abelian(std::size_t dim) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i + 1));
  return from_brackets(std::move(labels), {});
}

void AlgebraSpec::validate() const {
  const std::size_t n = dim();
  if (n == 0) throw ValidationError("algebra dimension must be positive");
  if (structure_.size() != n) throw ValidationError("structure tensor has wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    if (structure_[i].size() != n) throw ValidationError("structure tensor has wrong size");
    for (std::size_t j = 0; j < n; ++j)
      if (structure_[i][j].size() != n) throw ValidationError("structure tensor has wrong size");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (structure_[i][j][k] != -structure_[j][i][k]) {
          std::ostringstream os;
          os << "structure constants not antisymmetric at (" << i << "," << j << "," << k << ")";
          throw ValidationError(os.str());
        }
  // 2-step: every bracket value is central, so [[e_i,e_j],e_l] = 0.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (is_zero(structure_[i][j])) continue;
      for (std::size_t l = 0; l < n; ++l)
        if (!is_zero(bracket(structure_[i][j], unit_vector(n, l)))) {
          std::ostringstream os;
          os << "algebra is not 2-step nilpotent: [[" << labels_[i] << "," << labels_[j] << "]," << labels_[l]
             << "] != 0";
          throw ValidationError(os.str());
        }
    }
  // Jacobi, asserted on basis triples.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t l = j + 1; l < n; ++l) {
        QVector ei = unit_vector(n, i), ej = unit_vector(n, j), el = unit_vector(n, l);
        QVector s = bracket(bracket(ei, ej), el) + bracket(bracket(ej, el), ei) + bracket(bracket(el, ei), ej);
        if (!is_zero(s)) throw ValidationError("Jacobi identity fails");
      }
}

bool AlgebraSpec::is_abelian() const {
  for (const auto& row : structure_)
    for (const auto& v : row)
      if (!is_zero(v)) return false;
  return true;
}

QVector AlgebraSpec::bracket(const QVector& x, const QVector& y) const {
  const std::size_t n = dim();
  if (x.size() != n || y.size() != n) throw ValidationError("bracket: dimension mismatch");
  QVector r = zero_vector(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == 0 || i == j) continue;
      Rational s = x[i] * y[j];
      axpy(r, s, structure_[i][j]);
    }
  }
  return r;
}

Eigen::VectorXd AlgebraSpec::bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  const auto n = static_cast<Eigen::Index>(dim());
  if (x.size() != n || y.size() != n) throw ValidationError("bracket: dimension mismatch");
  Eigen::VectorXd r(n);
  for (Eigen::Index k = 0; k < n; ++k) r[k] = x.dot(structure_d_[static_cast<std::size_t>(k)] * y);
  return r;
}

QMatrix AlgebraSpec::ad(const QVector& x) const {
  const std::size_t n = dim();
  QMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    QVector col = bracket(x, unit_vector(n, j));
    for (std::size_t k = 0; k < n; ++k) m(k, j) = col[k];
  }
  return m;
}

Eigen::MatrixXd AlgebraSpec::ad(const Eigen::VectorXd& x) const {
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m.row(k) = x.transpose() * structure_d_[static_cast<std::size_t>(k)];
  return m;
}

std::vector<QVector> AlgebraSpec::center() const {
  // x central iff sum_i x_i c_ij^k = 0 for all j, k.
  const std::size_t n = dim();
  QMatrix system(n * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) system(j * n + k, i) = structure_[i][j][k];
  return null_space(system);
}

std::vector<QVector> AlgebraSpec::derived_subalgebra() const {
  std::vector<QVector> values;
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!is_zero(structure_[i][j])) values.push_back(structure_[i][j]);
  return row_space_basis(values, n);
}

GroupElement bch_product(const AlgebraSpec& algebra, const GroupElement& g, const GroupElement& h) {
  QVector r = g.log + h.log;
  axpy(r, Rational(1, 2), algebra.bracket(g.log, h.log));
  return {std::move(r)};
}

Eigen::VectorXd bch_product(const AlgebraSpec& algebra, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return x + y + 0.5 * algebra.bracket(x, y);
}

GroupElement group_inverse(const GroupElement& g) { return {-g.log}; }

GroupElement group_power(const AlgebraSpec&, const GroupElement& g, long exponent) {
  // One-parameter subgroup: exp(x)^k = exp(kx).
  return {Rational(exponent) * g.log};
}

const char* to_string(CausalType type) {
  switch (type) {
    case CausalType::timelike: return "timelike";
    case CausalType::null: return "null";
    case CausalType::spacelike: return "spacelike";
  }
  return "?";
}

CausalType exp_causal_type(const QVector& x, const MetricSpec& metric) {
  if (is_zero(x)) throw PreconditionError("exp_causal_type: zero vector");
  return causal_type(x, metric);
}

}  // namespace nilcurve
