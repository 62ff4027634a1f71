#include "nilcurve/metric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "nilcurve/error.hpp"

namespace nilcurve {

MetricSpec::MetricSpec(QMatrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() == 0 || gram_.rows() != gram_.cols()) throw ValidationError("Gram matrix must be square");
  if (!gram_.is_symmetric()) throw ValidationError("Gram matrix must be symmetric");
  auto inv = inverse(gram_);
  if (!inv) throw ValidationError("Gram matrix is degenerate");
  gram_inv_ = std::move(*inv);
  gram_d_ = to_double(gram_);
  gram_inv_d_ = to_double(gram_inv_);
}

MetricSpec MetricSpec::negated() const { return MetricSpec(Rational(-1) * gram_); }

RestrictedSignature restricted_signature(const MetricSpec& metric, const std::vector<QVector>& subspace) {
  RestrictedSignature sig;
  for (const auto& value : diagonalize_form(metric.gram(), subspace).values) {
    int s = sgn(value);
    if (s > 0) ++sig.p;
    else if (s < 0) ++sig.q;
    else ++sig.null;
  }
  return sig;
}

Signature signature(const MetricSpec& metric) {
  const std::size_t n = metric.dim();
  std::vector<QVector> all;
  for (std::size_t i = 0; i < n; ++i) all.push_back(unit_vector(n, i));
  auto r = restricted_signature(metric, all);
  if (r.null != 0) throw ValidationError("degenerate metric");
  return {r.p, r.q};
}

CausalType causal_type(const QVector& x, const MetricSpec& metric) {
  int s = sgn(metric.inner(x, x));
  if (s > 0) return CausalType::timelike;
  if (s < 0) return CausalType::spacelike;
  return CausalType::null;
}

CausalType causal_type(const Eigen::VectorXd& x, const MetricSpec& metric, double tol) {
  double v = metric.inner(x, x);
  if (std::abs(v) <= tol * std::max(1.0, x.squaredNorm())) return CausalType::null;
  return v > 0 ? CausalType::timelike : CausalType::spacelike;
}

bool is_lorentzian(const MetricSpec& metric) {
  auto s = signature(metric);
  return s.p == 1 || s.q == 1;
}

std::vector<QVector> WittFrame::center_basis() const {
  std::vector<QVector> b = U;
  b.insert(b.end(), Z.begin(), Z.end());
  return b;
}

std::vector<QVector> WittFrame::complement_basis() const {
  std::vector<QVector> b = V;
  b.insert(b.end(), E.begin(), E.end());
  return b;
}

std::vector<QVector> WittFrame::ordered_basis() const {
  std::vector<QVector> b = U;
  b.insert(b.end(), Z.begin(), Z.end());
  b.insert(b.end(), V.begin(), V.end());
  b.insert(b.end(), E.begin(), E.end());
  return b;
}

WittFrame witt_decomposition(const AlgebraSpec& algebra, const MetricSpec& metric) {
  const std::size_t n = algebra.dim();
  if (metric.dim() != n) throw ValidationError("metric and algebra dimensions differ");
  const QMatrix& g = metric.gram();
  WittFrame frame;
  frame.dim = n;

  std::vector<QVector> center = row_space_basis(algebra.center(), n);

  // U: radical of the form restricted to the center.
  if (!center.empty()) {
    QMatrix restricted(center.size(), center.size());
    for (std::size_t i = 0; i < center.size(); ++i)
      for (std::size_t j = 0; j < center.size(); ++j) restricted(i, j) = form(g, center[i], center[j]);
    std::vector<QVector> radical;
    for (const auto& coeff : null_space(restricted)) {
      QVector u = zero_vector(n);
      for (std::size_t i = 0; i < center.size(); ++i) axpy(u, coeff[i], center[i]);
      radical.push_back(std::move(u));
    }
    frame.U = row_space_basis(radical, n);
  }
  const std::size_t d = frame.U.size();

  // V: greedy standard basis vectors with invertible pairing, normalized, then null-corrected.
  if (d > 0) {
    std::vector<QVector> chosen;
    for (std::size_t k = 0; k < n && chosen.size() < d; ++k) {
      chosen.push_back(unit_vector(n, k));
      QMatrix pairing(d, chosen.size());
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < chosen.size(); ++j) pairing(i, j) = form(g, frame.U[i], chosen[j]);
      if (rank(pairing) < chosen.size()) chosen.pop_back();
    }
    QMatrix pairing(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) pairing(i, j) = form(g, frame.U[i], chosen[j]);
    QMatrix pinv = *inverse(pairing);
    std::vector<QVector> w(d, zero_vector(n));
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) axpy(w[j], pinv(k, j), chosen[k]);
    for (std::size_t j = 0; j < d; ++j) {
      QVector v = w[j];
      for (std::size_t k = 0; k < d; ++k) axpy(v, Rational(-1, 2) * form(g, w[j], w[k]), frame.U[k]);
      frame.V.push_back(std::move(v));
    }
  }

  // Z = center ∩ V^⊥, E = (U ⊕ V ⊕ Z)^⊥; orthogonal bases for both.
  std::vector<QVector> z_space = center;
  if (!frame.V.empty()) z_space = intersect(center, orthogonal_complement(g, frame.V), n);
  frame.Z = diagonalize_form(g, row_space_basis(z_space, n)).basis;
  std::vector<QVector> uvz = frame.U;
  uvz.insert(uvz.end(), frame.V.begin(), frame.V.end());
  uvz.insert(uvz.end(), frame.Z.begin(), frame.Z.end());
  std::vector<QVector> e_space = uvz.empty() ? orthogonal_complement(g, {}) : orthogonal_complement(g, uvz);
  frame.E = diagonalize_form(g, row_space_basis(e_space, n)).basis;

  auto ordered = frame.ordered_basis();
  if (ordered.size() != n || span_dimension(ordered, n) != n)
    throw NumericalError("Witt decomposition failed to span the algebra");
  QMatrix b = QMatrix::from_columns(ordered, n);
  QMatrix swap = QMatrix::identity(n);
  const std::size_t m_z = frame.Z.size();
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t ui = i, vi = d + m_z + i;
    swap(ui, ui) = 0;
    swap(vi, vi) = 0;
    swap(ui, vi) = 1;
    swap(vi, ui) = 1;
  }
  frame.iota = b * swap * (*inverse(b));
  return frame;
}

std::pair<QVector, QVector> split_center(const WittFrame& frame, const QVector& x) {
  auto ordered = frame.ordered_basis();
  auto c = coordinates(ordered, x);
  if (!c) throw NumericalError("split_center: frame is not a basis");
  const std::size_t n = frame.dim;
  QVector central = zero_vector(n), rest = zero_vector(n);
  const std::size_t nc = frame.U.size() + frame.Z.size();
  for (std::size_t i = 0; i < ordered.size(); ++i) axpy(i < nc ? central : rest, (*c)[i], ordered[i]);
  return {central, rest};
}

QVector ad_dagger(const QVector& x, const QVector& u, const AlgebraSpec& algebra, const MetricSpec& metric) {
  QMatrix adx = algebra.ad(x);
  return metric.gram_inverse() * (adx.transpose() * (metric.gram() * u));
}

Eigen::VectorXd ad_dagger(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const AlgebraSpec& algebra,
                          const MetricSpec& metric) {
  return metric.gram_inverse_d() * (algebra.ad(x).transpose() * (metric.gram_d() * u));
}

QMatrix j_map(const QVector& a, const WittFrame& frame, const AlgebraSpec& algebra, const MetricSpec& metric) {
  auto center = frame.center_basis();
  if (!in_span(center, a)) throw PreconditionError("j_map: argument is not in U ⊕ Z");
  auto basis = frame.complement_basis();
  QMatrix j(basis.size(), basis.size());
  QVector ia = frame.iota * a;
  for (std::size_t c = 0; c < basis.size(); ++c) {
    QVector y = frame.iota * ad_dagger(basis[c], ia, algebra, metric);
    auto coords = coordinates(basis, y);
    if (!coords) throw NumericalError("j_map: image left V ⊕ E");
    for (std::size_t r = 0; r < basis.size(); ++r) j(r, c) = (*coords)[r];
  }
  return j;
}

bool is_pseudoH(const AlgebraSpec& algebra, const MetricSpec& metric) {
  WittFrame frame = witt_decomposition(algebra, metric);
  if (frame.center_degenerate()) throw PreconditionError("is_pseudoH: center is degenerate");
  const std::size_t k = frame.E.size();
  if (k == 0) return true;
  std::vector<QMatrix> js;
  for (const auto& z : frame.Z) js.push_back(j_map(z, frame, algebra, metric));
  QMatrix id = QMatrix::identity(k);
  for (std::size_t a = 0; a < js.size(); ++a)
    for (std::size_t b = a; b < js.size(); ++b) {
      QMatrix s = js[a] * js[b] + js[b] * js[a] + Rational(2) * metric.inner(frame.Z[a], frame.Z[b]) * id;
      if (!s.is_zero()) return false;
    }
  return true;
}

std::vector<QMatrix> bracket_forms(const AlgebraSpec& algebra, const std::vector<QVector>& complement,
                                   const std::vector<QVector>& center) {
  const std::size_t d = complement.size();
  std::vector<QMatrix> forms(center.size(), QMatrix(d, d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      auto c = coordinates(center, algebra.bracket(complement[a], complement[b]));
      if (!c) throw NumericalError("bracket_forms: bracket leaves the center");
      for (std::size_t k = 0; k < center.size(); ++k) {
        forms[k](a, b) = (*c)[k];
        forms[k](b, a) = -(*c)[k];
      }
    }
  return forms;
}

namespace {

// Polynomial with rational coefficients, lowest degree first.
using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

Poly remainder(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  return a;
}

int sign_at_infinity(const Poly& p, bool positive) {
  if (p.empty()) return 0;
  int s = sgn(p.back());
  if (!positive && (p.size() - 1) % 2 == 1) s = -s;
  return s;
}

// Number of distinct real roots via a Sturm sequence.
std::size_t distinct_real_roots(Poly p) {
  trim(p);
  if (p.size() <= 1) return 0;
  std::vector<Poly> seq{p, derivative(p)};
  while (!seq.back().empty()) {
    Poly r = remainder(seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    seq.push_back(r);
  }
  auto variations = [&](bool positive) {
    int count = 0, last = 0;
    for (const auto& q : seq) {
      int s = sign_at_infinity(q, positive);
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return static_cast<std::size_t>(variations(false) - variations(true));
}

// Interpolating polynomial through (x_i, y_i), x_i = 0..deg.
Poly interpolate(const std::vector<Rational>& ys) {
  const std::size_t m = ys.size();
  QMatrix vander(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    Rational x = static_cast<long>(i), pw = 1;
    for (std::size_t j = 0; j < m; ++j) {
      vander(i, j) = pw;
      pw *= x;
    }
  }
  auto c = solve(vander, QVector(ys.begin(), ys.end()));
  Poly p(c->begin(), c->end());
  trim(p);
  return p;
}

// Cube-surface subdivision certifying σ_min(Ω(λ)) > 0 for λ ≠ 0.
bool certify_invertible_pencil(const std::vector<Eigen::MatrixXd>& forms) {
  const std::size_t m = forms.size();
  double lipschitz = 0;
  for (const auto& c : forms) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c);
    lipschitz += svd.singularValues()(0);
  }
  auto sigma_min = [&](const Eigen::VectorXd& lam) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(forms[0].rows(), forms[0].cols());
    for (std::size_t k = 0; k < m; ++k) omega += lam[static_cast<Eigen::Index>(k)] * forms[k];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(omega);
    return svd.singularValues()(svd.singularValues().size() - 1);
  };
  const double radius_factor = std::sqrt(static_cast<double>(m - 1));
  std::function<bool(std::size_t, double, Eigen::VectorXd, double, int)> cell;
  cell = [&](std::size_t fixed, double sign, Eigen::VectorXd centre, double half, int depth) -> bool {
    centre[static_cast<Eigen::Index>(fixed)] = sign;
    double s = sigma_min(centre);
    if (s > lipschitz * half * radius_factor) return true;
    if (s < 1e-10 * lipschitz) return false;
    if (depth > 24) throw NumericalError("is_nonsingular: certification did not converge");
    // Split the cell into 2^(m-1) children.
    const std::size_t free_dims = m - 1;
    for (std::size_t mask = 0; mask < (std::size_t{1} << free_dims); ++mask) {
      Eigen::VectorXd child = centre;
      std::size_t bit = 0;
      for (std::size_t k = 0; k < m; ++k) {
        if (k == fixed) continue;
        child[static_cast<Eigen::Index>(k)] += ((mask >> bit) & 1U ? 0.5 : -0.5) * half;
        ++bit;
      }
      if (!cell(fixed, sign, child, half / 2, depth + 1)) return false;
    }
    return true;
  };
  for (std::size_t fixed = 0; fixed < m; ++fixed)
    for (double sign : {-1.0, 1.0})
      if (!cell(fixed, sign, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m)), 1.0, 0)) return false;
  return true;
}

}  // namespace

bool is_nonsingular(const AlgebraSpec& algebra) {
  const std::size_t n = algebra.dim();
  auto center = row_space_basis(algebra.center(), n);
  auto complement = extend_to_basis(center, n);
  if (complement.empty()) return true;
  auto derived = algebra.derived_subalgebra();
  if (derived.size() != center.size()) return false;
  const std::size_t d = complement.size();
  if (d % 2 == 1) return false;
  auto forms = bracket_forms(algebra, complement, center);
  const std::size_t m = forms.size();
  if (m == 1) return determinant(forms[0]) != 0;
  // Pf(Ω) is homogeneous of degree d/2; odd degree forces a zero on the sphere.
  if ((d / 2) % 2 == 1) return false;
  if (m == 2) {
    if (determinant(forms[1]) == 0) return false;
    std::vector<Rational> samples;
    for (std::size_t i = 0; i <= d; ++i) samples.push_back(determinant(forms[0] + Rational(static_cast<long>(i)) * forms[1]));
    return distinct_real_roots(interpolate(samples)) == 0;
  }
  // An exact rational point of the pencil with det = 0 settles the question.
  std::vector<long> c(m, -2);
  while (true) {
    if (std::any_of(c.begin(), c.end(), [](long x) { return x != 0; })) {
      QMatrix omega(d, d);
      for (std::size_t k = 0; k < m; ++k) omega = omega + Rational(c[k]) * forms[k];
      if (determinant(omega) == 0) return false;
    }
    std::size_t i = 0;
    while (i < m && c[i] == 2) c[i++] = -2;
    if (i == m) break;
    ++c[i];
  }
  std::vector<Eigen::MatrixXd> fd;
  for (const auto& f : forms) fd.push_back(to_double(f));
  return certify_invertible_pencil(fd);
}

}  // namespace nilcurve
