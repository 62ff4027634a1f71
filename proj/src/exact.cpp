#include "nilcurve/exact.hpp"

#include <algorithm>
#include <cctype>

#include "nilcurve/error.hpp"

namespace nilcurve {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  }
  if (text.empty()) throw ValidationError("empty rational literal");
  std::string body = text;
  bool negative = false;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    body = body.substr(1);
  }
  Rational value;
  auto slash = body.find('/');
  auto point = body.find('.');
  if (slash != std::string::npos) {
    std::string num = body.substr(0, slash);
    std::string den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ValidationError("bad rational literal '" + raw + "'");
    mpz_class d(den, 10);
    if (d == 0) throw ValidationError("zero denominator in '" + raw + "'");
    value = Rational(mpz_class(num, 10), d);
  } else if (point != std::string::npos) {
    std::string whole = body.substr(0, point);
    std::string frac = body.substr(point + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
      throw ValidationError("bad decimal literal '" + raw + "'");
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value = Rational(mpz_class(whole + frac, 10), scale);
  } else {
    if (!all_digits(body)) throw ValidationError("bad rational literal '" + raw + "'");
    value = Rational(mpz_class(body, 10));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str();
}

QVector zero_vector(std::size_t n) { return QVector(n, Rational(0)); }

QVector unit_vector(std::size_t n, std::size_t i) {
  QVector v(n, Rational(0));
  v[i] = 1;
  return v;
}

bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

QVector operator+(const QVector& a, const QVector& b) {
  QVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

QVector operator-(const QVector& a, const QVector& b) {
  QVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

QVector operator-(const QVector& a) {
  QVector r(a);
  for (auto& x : r) x = -x;
  return r;
}

QVector operator*(const Rational& s, const QVector& v) {
  QVector r(v);
  for (auto& x : r) x *= s;
  return r;
}

void axpy(QVector& y, const Rational& a, const QVector& x) {
  if (a == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (x[i] != 0) y[i] += a * x[i];
  }
}

Rational dot(const QVector& a, const QVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Eigen::VectorXd to_double(const QVector& v) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) r[static_cast<Eigen::Index>(i)] = v[i].get_d();
  return r;
}

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& columns, std::size_t rows) {
  QMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  return m;
}

QVector QMatrix::row(std::size_t r) const {
  return QVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

QVector QMatrix::column(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

bool QMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

bool QMatrix::operator==(const QMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  QMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += a(i, k) * b(k, j);
    }
  return m;
}

QVector operator*(const QMatrix& a, const QVector& v) {
  QVector r(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (v[k] != 0 && a(i, k) != 0) r[i] += a(i, k) * v[k];
  return r;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  QMatrix m(a);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) += b(i, j);
  return m;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  QMatrix m(a);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) -= b(i, j);
  return m;
}

QMatrix operator*(const Rational& s, const QMatrix& a) {
  QMatrix m(a);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) *= s;
  return m;
}

Eigen::MatrixXd to_double(const QMatrix& m) {
  Eigen::MatrixXd r(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
  return r;
}

Echelon row_reduce(QMatrix m) {
  Echelon out;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t pivot = lead;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(lead, j));
    Rational inv = 1 / m(lead, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(lead, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(lead, j) != 0) m(r, j) -= f * m(lead, j);
    }
    out.pivots.push_back(c);
    ++lead;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const QMatrix& m) { return row_reduce(m).pivots.size(); }

std::vector<QVector> null_space(const QMatrix& m) {
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v = zero_vector(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  QMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Echelon e = row_reduce(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  QVector x = zero_vector(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
  return x;
}

Rational determinant(QMatrix m) {
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m(pivot, c) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      Rational f = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = row_reduce(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

std::vector<QVector> row_space_basis(const std::vector<QVector>& vectors, std::size_t dim) {
  if (vectors.empty()) return {};
  Echelon e = row_reduce(QMatrix::from_rows(vectors, dim));
  std::vector<QVector> basis;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) basis.push_back(e.reduced.row(r));
  return basis;
}

std::vector<QVector> independent_subset(const std::vector<QVector>& vectors, std::size_t dim) {
  std::vector<QVector> kept;
  std::size_t current = 0;
  for (const auto& v : vectors) {
    kept.push_back(v);
    std::size_t r = span_dimension(kept, dim);
    if (r == current) {
      kept.pop_back();
    } else {
      current = r;
    }
  }
  return kept;
}

std::size_t span_dimension(const std::vector<QVector>& vectors, std::size_t dim) {
  if (vectors.empty()) return 0;
  return rank(QMatrix::from_rows(vectors, dim));
}

bool in_span(const std::vector<QVector>& vectors, const QVector& v) {
  if (is_zero(v)) return true;
  if (vectors.empty()) return false;
  return coordinates(vectors, v).has_value();
}

bool contains(const std::vector<QVector>& big, const std::vector<QVector>& small) {
  return std::all_of(small.begin(), small.end(), [&](const QVector& v) { return in_span(big, v); });
}

std::optional<QVector> coordinates(const std::vector<QVector>& basis, const QVector& v) {
  if (basis.empty()) {
    if (is_zero(v)) return QVector{};
    return std::nullopt;
  }
  return solve(QMatrix::from_columns(basis, v.size()), v);
}

std::vector<QVector> intersect(const std::vector<QVector>& a, const std::vector<QVector>& b,
                               std::size_t dim) {
  if (a.empty() || b.empty()) return {};
  // Solve sum x_i a_i - sum y_j b_j = 0.
  std::vector<QVector> cols;
  for (const auto& v : a) cols.push_back(v);
  for (const auto& v : b) cols.push_back(-v);
  auto kernel = null_space(QMatrix::from_columns(cols, dim));
  std::vector<QVector> out;
  for (const auto& k : kernel) {
    QVector w = zero_vector(dim);
    for (std::size_t i = 0; i < a.size(); ++i) axpy(w, k[i], a[i]);
    out.push_back(std::move(w));
  }
  return row_space_basis(out, dim);
}

std::vector<QVector> extend_to_basis(const std::vector<QVector>& partial, std::size_t dim) {
  std::vector<QVector> all = partial;
  std::vector<QVector> added;
  std::size_t current = span_dimension(all, dim);
  for (std::size_t i = 0; i < dim && current < dim; ++i) {
    all.push_back(unit_vector(dim, i));
    std::size_t r = span_dimension(all, dim);
    if (r > current) {
      added.push_back(all.back());
      current = r;
    } else {
      all.pop_back();
    }
  }
  return added;
}

Rational form(const QMatrix& gram, const QVector& x, const QVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0 && gram(i, j) != 0) s += x[i] * gram(i, j) * y[j];
  }
  return s;
}

std::vector<QVector> orthogonal_complement(const QMatrix& gram, const std::vector<QVector>& sub) {
  const std::size_t n = gram.rows();
  if (sub.empty()) {
    std::vector<QVector> all;
    for (std::size_t i = 0; i < n; ++i) all.push_back(unit_vector(n, i));
    return all;
  }
  std::vector<QVector> rows;
  for (const auto& s : sub) rows.push_back(gram * s);
  return null_space(QMatrix::from_rows(rows, n));
}

Diagonalization diagonalize_form(const QMatrix& gram, const std::vector<QVector>& subspace) {
  const std::size_t n = gram.rows();
  std::vector<QVector> rest = independent_subset(subspace, n);
  Diagonalization out;
  while (!rest.empty()) {
    std::size_t pivot = rest.size();
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (form(gram, rest[i], rest[i]) != 0) {
        pivot = i;
        break;
      }
    if (pivot == rest.size()) {
      // Every remaining vector is null; mix a non-orthogonal pair if one exists.
      bool mixed = false;
      for (std::size_t i = 0; i < rest.size() && !mixed; ++i)
        for (std::size_t j = i + 1; j < rest.size() && !mixed; ++j)
          if (form(gram, rest[i], rest[j]) != 0) {
            rest[i] = rest[i] + rest[j];
            pivot = i;
            mixed = true;
          }
      if (!mixed) {
        for (auto& v : rest) {
          out.basis.push_back(std::move(v));
          out.values.push_back(0);
        }
        break;
      }
    }
    QVector p = rest[pivot];
    Rational pp = form(gram, p, p);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pivot));
    for (auto& v : rest) axpy(v, -form(gram, v, p) / pp, p);
    out.basis.push_back(std::move(p));
    out.values.push_back(pp);
  }
  return out;
}

}  // namespace nilcurve
