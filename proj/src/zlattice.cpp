#include "nilcurve/zlattice.hpp"

#include <utility>

namespace nilcurve {

mpz_class floor_div(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

namespace {

struct Row {
  ZVector v;  // scaled coordinates
  ZVector t;  // combination of generators
};

void sub_multiple(Row& a, const Row& b, const mpz_class& q) {
  for (std::size_t k = 0; k < a.v.size(); ++k) a.v[k] -= q * b.v[k];
  for (std::size_t k = 0; k < a.t.size(); ++k) a.t[k] -= q * b.t[k];
}

void negate(Row& a) {
  for (auto& x : a.v) x = -x;
  for (auto& x : a.t) x = -x;
}

}  // namespace

HermiteResult hermite(const std::vector<QVector>& generators, std::size_t dim) {
  const std::size_t r = generators.size();
  mpz_class scale = 1;
  for (const auto& g : generators)
    for (const auto& x : g) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Row> rows(r);
  for (std::size_t i = 0; i < r; ++i) {
    rows[i].v.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      Rational s = generators[i][k] * scale;
      rows[i].v[k] = s.get_num();
    }
    rows[i].t.assign(r, 0);
    rows[i].t[i] = 1;
  }

  HermiteResult out;
  std::size_t top = 0;
  for (std::size_t col = 0; col < dim && top < r; ++col) {
    // Euclid on column col among rows top..r-1
    while (true) {
      std::size_t best = r;
      for (std::size_t i = top; i < r; ++i)
        if (rows[i].v[col] != 0 && (best == r || abs(rows[i].v[col]) < abs(rows[best].v[col]))) best = i;
      if (best == r) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < r; ++i) {
        if (rows[i].v[col] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i].v[col].get_mpz_t(), rows[top].v[col].get_mpz_t());
        sub_multiple(rows[i], rows[top], q);
        if (rows[i].v[col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top].v[col] == 0) continue;
    if (rows[top].v[col] < 0) negate(rows[top]);
    for (std::size_t i = 0; i < top; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i].v[col].get_mpz_t(), rows[top].v[col].get_mpz_t());
      if (q != 0) sub_multiple(rows[i], rows[top], q);
    }
    out.pivots.push_back(col);
    ++top;
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (i < top) {
      QVector b(dim);
      for (std::size_t k = 0; k < dim; ++k) {
        b[k] = Rational(rows[i].v[k], scale);
        b[k].canonicalize();
      }
      out.basis.push_back(std::move(b));
      out.transform.push_back(rows[i].t);
    } else {
      out.relations.push_back(rows[i].t);
    }
  }
  return out;
}

ZModule::ZModule(const std::vector<QVector>& generators, std::size_t dim) : dim_(dim) {
  auto h = hermite(generators, dim);
  basis_ = std::move(h.basis);
  pivots_ = std::move(h.pivots);
}

QVector ZModule::reduce(const QVector& v) const {
  QVector w = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto c = pivots_[i];
    mpz_class q = floor_div(w[c] / basis_[i][c]);
    if (q != 0) axpy(w, Rational(-q), basis_[i]);
  }
  return w;
}

std::optional<ZVector> ZModule::coordinates(const QVector& v) const {
  QVector w = v;
  ZVector c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const auto p = pivots_[i];
    Rational q = w[p] / basis_[i][p];
    if (q.get_den() != 1) return std::nullopt;
    c[i] = q.get_num();
    axpy(w, Rational(-q), basis_[i]);
  }
  if (!is_zero(w)) return std::nullopt;
  return c;
}

}  // namespace nilcurve
