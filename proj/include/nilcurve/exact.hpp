#pragma once

// Exact rational vectors and matrices over GMP, plus the row-reduction
// toolkit used for every rank/subspace decision in the library.

#include <gmpxx.h>

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nilcurve {

using Rational = mpq_class;
using QVector = std::vector<Rational>;

// Accepts "p/q", "p", "-p/q" and finite decimals such as "0.25".
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

QVector zero_vector(std::size_t n);
QVector unit_vector(std::size_t n, std::size_t i);
bool is_zero(const QVector& v);

QVector operator+(const QVector& a, const QVector& b);
QVector operator-(const QVector& a, const QVector& b);
QVector operator-(const QVector& a);
QVector operator*(const Rational& s, const QVector& v);
void axpy(QVector& y, const Rational& a, const QVector& x);  // y += a*x
Rational dot(const QVector& a, const QVector& b);

Eigen::VectorXd to_double(const QVector& v);

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);

  static QMatrix identity(std::size_t n);
  static QMatrix from_columns(const std::vector<QVector>& columns, std::size_t rows);
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QVector row(std::size_t r) const;
  QVector column(std::size_t c) const;
  QMatrix transpose() const;

  bool is_zero() const;
  bool is_symmetric() const;
  bool operator==(const QMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
QVector operator*(const QMatrix& a, const QVector& v);
QMatrix operator+(const QMatrix& a, const QMatrix& b);
QMatrix operator-(const QMatrix& a, const QMatrix& b);
QMatrix operator*(const Rational& s, const QMatrix& a);

Eigen::MatrixXd to_double(const QMatrix& m);

struct Echelon {
  QMatrix reduced;                  // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Echelon row_reduce(QMatrix m);
std::size_t rank(const QMatrix& m);
std::vector<QVector> null_space(const QMatrix& m);
std::optional<QVector> solve(const QMatrix& a, const QVector& b);
Rational determinant(QMatrix m);
std::optional<QMatrix> inverse(const QMatrix& m);

// Subspaces are carried as lists of spanning vectors in a fixed ambient dimension.
std::vector<QVector> row_space_basis(const std::vector<QVector>& vectors, std::size_t dim);
std::vector<QVector> independent_subset(const std::vector<QVector>& vectors, std::size_t dim);
std::size_t span_dimension(const std::vector<QVector>& vectors, std::size_t dim);
bool in_span(const std::vector<QVector>& vectors, const QVector& v);
bool contains(const std::vector<QVector>& big, const std::vector<QVector>& small);
std::optional<QVector> coordinates(const std::vector<QVector>& basis, const QVector& v);
std::vector<QVector> intersect(const std::vector<QVector>& a, const std::vector<QVector>& b,
                               std::size_t dim);
// Standard basis vectors that extend `partial` to a basis of Q^dim.
std::vector<QVector> extend_to_basis(const std::vector<QVector>& partial, std::size_t dim);

// Bilinear forms given by a symmetric Gram matrix.
Rational form(const QMatrix& gram, const QVector& x, const QVector& y);
// {x in Q^dim : gram(x, s) = 0 for all s in sub}
std::vector<QVector> orthogonal_complement(const QMatrix& gram, const std::vector<QVector>& sub);

struct Diagonalization {
  std::vector<QVector> basis;   // mutually orthogonal, spans the input subspace
  std::vector<Rational> values; // form(basis[i], basis[i])
};

// Congruence diagonalization of the form restricted to span(subspace).
Diagonalization diagonalize_form(const QMatrix& gram, const std::vector<QVector>& subspace);

}  // namespace nilcurve
