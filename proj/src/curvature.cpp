#include "nilcurve/curvature.hpp"

#include "nilcurve/error.hpp"

namespace nilcurve {

QVector ConnectionTable::apply(const QVector& x, const QVector& y) const {
  const std::size_t n = dim();
  QVector r = zero_vector(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (y[j] != 0) axpy(r, x[i] * y[j], table_[i][j]);
  }
  return r;
}

bool ConnectionTable::is_zero() const {
  for (const auto& row : table_)
    for (const auto& v : row)
      if (!nilcurve::is_zero(v)) return false;
  return true;
}

std::vector<Eigen::MatrixXd> ConnectionTable::to_double() const {
  const auto n = static_cast<Eigen::Index>(dim());
  std::vector<Eigen::MatrixXd> out(dim(), Eigen::MatrixXd::Zero(n, n));
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      for (std::size_t k = 0; k < dim(); ++k)
        out[i](static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = table_[i][j][k].get_d();
  return out;
}

QVector CurvatureTensor::apply(const QVector& x, const QVector& y, const QVector& z) const {
  const std::size_t n = dim();
  QVector r = zero_vector(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (z[k] != 0) axpy(r, x[i] * y[j] * z[k], r_[i][j][k]);
    }
  }
  return r;
}

bool CurvatureTensor::is_zero() const {
  for (const auto& a : r_)
    for (const auto& b : a)
      for (const auto& v : b)
        if (!nilcurve::is_zero(v)) return false;
  return true;
}

std::vector<std::vector<Eigen::MatrixXd>> CurvatureTensor::to_double() const {
  const auto n = static_cast<Eigen::Index>(dim());
  std::vector<std::vector<Eigen::MatrixXd>> out(dim(), std::vector<Eigen::MatrixXd>(dim(), Eigen::MatrixXd::Zero(n, n)));
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      for (std::size_t k = 0; k < dim(); ++k)
        for (std::size_t l = 0; l < dim(); ++l)
          out[i][j](static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) = r_[i][j][k][l].get_d();
  return out;
}

ConnectionTable connection(const AlgebraSpec& algebra, const MetricSpec& metric) {
  // Koszul: ∇_x y = ½([x,y] − ad†_x y − ad†_y x)
  const std::size_t n = algebra.dim();
  std::vector<std::vector<QVector>> table(n, std::vector<QVector>(n));
  std::vector<QMatrix> dagger;  // dagger[i] = G⁻¹ ad_{e_i}ᵀ G
  for (std::size_t i = 0; i < n; ++i)
    dagger.push_back(metric.gram_inverse() * (algebra.ad(unit_vector(n, i)).transpose() * metric.gram()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      QVector v = algebra.structure(i, j) - dagger[i].column(j) - dagger[j].column(i);
      table[i][j] = Rational(1, 2) * v;
    }
  return ConnectionTable(std::move(table));
}

CurvatureTensor riemann(const AlgebraSpec& algebra, const ConnectionTable& nabla) {
  const std::size_t n = algebra.dim();
  std::vector<std::vector<std::vector<QVector>>> r(n, std::vector<std::vector<QVector>>(n, std::vector<QVector>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    QVector ei = unit_vector(n, i);
    for (std::size_t j = 0; j < n; ++j) {
      QVector ej = unit_vector(n, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (j < i) {
          r[i][j][k] = -r[j][i][k];
          continue;
        }
        if (i == j) {
          r[i][j][k] = zero_vector(n);
          continue;
        }
        QVector v = nabla.apply(ei, nabla(j, k)) - nabla.apply(ej, nabla(i, k)) -
                    nabla.apply(algebra.structure(i, j), unit_vector(n, k));
        r[i][j][k] = std::move(v);
      }
    }
  }
  return CurvatureTensor(std::move(r));
}

CurvatureTensor riemann(const AlgebraSpec& algebra, const MetricSpec& metric) {
  return riemann(algebra, connection(algebra, metric));
}

Rational sectional_numerator(const CurvatureTensor& r, const MetricSpec& metric, const QVector& x, const QVector& y) {
  return metric.inner(r.apply(x, y, y), x);
}

bool is_homaloidal(const CurvatureTensor& r, const MetricSpec& metric, const QVector& x, const QVector& y) {
  return sectional_numerator(r, metric, x, y) == 0;
}

bool is_flat_submanifold(const CurvatureTensor& r, const MetricSpec& metric, const std::vector<QVector>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      for (std::size_t k = 0; k < basis.size(); ++k) {
        QVector v = r.apply(basis[i], basis[j], basis[k]);
        for (std::size_t l = 0; l < basis.size(); ++l)
          if (metric.inner(v, basis[l]) != 0) return false;
      }
  return true;
}

QMatrix ricci(const CurvatureTensor& r) {
  const std::size_t n = r.dim();
  QMatrix ric(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 0; i < n; ++i) ric(a, b) += r(i, a, b)[i];
  return ric;
}

Rational scalar_curvature(const QMatrix& ricci_matrix, const MetricSpec& metric) {
  Rational s = 0;
  const QMatrix& ginv = metric.gram_inverse();
  for (std::size_t a = 0; a < ricci_matrix.rows(); ++a)
    for (std::size_t b = 0; b < ricci_matrix.cols(); ++b) s += ginv(a, b) * ricci_matrix(a, b);
  return s;
}

bool is_flat(const AlgebraSpec& algebra, const MetricSpec& metric) { return riemann(algebra, metric).is_zero(); }

bool flatness_sufficient_condition(const AlgebraSpec& algebra, const WittFrame& frame) {
  return frame.E.empty() && contains(frame.U, algebra.derived_subalgebra());
}

const char* to_string(ConstantCurvature c) {
  switch (c) {
    case ConstantCurvature::flat: return "flat";
    case ConstantCurvature::constant_nonzero: return "constant_nonzero";
    case ConstantCurvature::not_constant: return "not_constant";
  }
  return "?";
}

ConstantCurvatureResult constant_curvature_check(const CurvatureTensor& r, const MetricSpec& metric) {
  if (r.is_zero()) return {ConstantCurvature::flat, Rational(0)};
  // Constant sectional curvature K on nondegenerate planes iff R = K R0,
  // R0(x,y)z = <y,z>x − <x,z>y.
  const std::size_t n = r.dim();
  const QMatrix& g = metric.gram();
  std::optional<Rational> k;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t l = 0; l < n; ++l) {
          Rational r0 = (l == i ? g(j, c) : Rational(0)) - (l == j ? g(i, c) : Rational(0));
          const Rational& val = r(i, j, c)[l];
          if (r0 == 0) {
            if (val != 0) return {ConstantCurvature::not_constant, std::nullopt};
            continue;
          }
          Rational ratio = val / r0;
          if (!k) k = ratio;
          else if (*k != ratio) return {ConstantCurvature::not_constant, std::nullopt};
        }
  return {ConstantCurvature::constant_nonzero, k};
}

FlatMetricWitness flat_metric_exists(const AlgebraSpec& algebra) {
  const std::size_t n = algebra.dim();
  FlatMetricWitness out;
  auto center = row_space_basis(algebra.center(), n);
  const std::size_t m = center.size();
  out.dimension_condition = 2 * m >= n;
  if (!out.dimension_condition) {
    out.note = "dim of center below ceil(n/2)";
    return out;
  }
  auto complement = extend_to_basis(center, n);
  const std::size_t d = complement.size();
  auto derived = algebra.derived_subalgebra();
  if (derived.size() > d) {
    out.note = "derived algebra larger than the complement; no null pairing contains it";
    return out;
  }
  // U: derived algebra extended inside the center to dimension d; Z: the rest of the center.
  std::vector<QVector> u = derived;
  for (const auto& c : center) {
    if (u.size() == d) break;
    auto trial = u;
    trial.push_back(c);
    if (span_dimension(trial, n) > u.size()) u.push_back(c);
  }
  std::vector<QVector> z;
  for (const auto& c : center) {
    auto trial = u;
    trial.insert(trial.end(), z.begin(), z.end());
    trial.push_back(c);
    if (span_dimension(trial, n) > u.size() + z.size()) z.push_back(c);
  }
  // Adapted basis (U, Z, V): <u_i, v_j> = δ_ij, <z_a, z_b> = δ_ab.
  std::vector<QVector> adapted = u;
  adapted.insert(adapted.end(), z.begin(), z.end());
  adapted.insert(adapted.end(), complement.begin(), complement.end());
  QMatrix m_adapted(n, n);
  for (std::size_t i = 0; i < d; ++i) {
    m_adapted(i, d + z.size() + i) = 1;
    m_adapted(d + z.size() + i, i) = 1;
  }
  for (std::size_t a = 0; a < z.size(); ++a) m_adapted(d + a, d + a) = 1;
  QMatrix binv = *inverse(QMatrix::from_columns(adapted, n));
  MetricSpec metric(binv.transpose() * m_adapted * binv);
  if (!is_flat(algebra, metric)) throw ContradictionFound("constructed metric with [n,n] in U and E = 0 is not flat");
  out.metric = metric;
  out.note = "flat witness with [n,n] in U and E = 0";
  return out;
}

}  // namespace nilcurve
