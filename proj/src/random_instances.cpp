#include "nilcurve/random_instances.hpp"

#include <algorithm>

#include "nilcurve/curvature.hpp"
#include "nilcurve/error.hpp"

namespace nilcurve {

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

long nonzero(std::mt19937_64& rng, long range) {
  long v = uniform(rng, 1, range);
  return uniform(rng, 0, 1) ? v : -v;
}

}  // namespace

QVector random_rational_vector(std::size_t n, std::mt19937_64& rng, long range, long max_den) {
  QVector v(n);
  for (auto& x : v) {
    x = Rational(uniform(rng, -range, range), uniform(rng, 1, max_den));
    x.canonicalize();
  }
  return v;
}

QMatrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
  QMatrix upper = QMatrix::identity(n), lower = QMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    upper(i, i) = uniform(rng, 0, 1) ? 1 : -1;
    for (std::size_t j = i + 1; j < n; ++j) {
      upper(i, j) = uniform(rng, -1, 1);
      lower(j, i) = uniform(rng, -1, 1);
    }
  }
  QMatrix p = lower * upper;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  QMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = p(i, perm[j]);
  return out;
}

Instance change_basis(const Instance& instance, const QMatrix& p) {
  const std::size_t n = instance.algebra.dim();
  auto p_inv = inverse(p);
  if (!p_inv) throw ValidationError("change_basis: matrix is singular");
  std::vector<std::vector<QVector>> c(n, std::vector<QVector>(n, zero_vector(n)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      c[a][b] = *p_inv * instance.algebra.bracket(p.column(a), p.column(b));
      c[b][a] = -c[a][b];
    }
  return {AlgebraSpec(instance.algebra.labels(), c), MetricSpec(p.transpose() * instance.metric.gram() * p)};
}

Instance random_flat_instance(std::uint64_t seed, std::size_t dim) {
  if (dim < 4 || dim > 10) throw ValidationError("random_flat_instance: dim must be in [4, 10]");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    const std::size_t k = static_cast<std::size_t>(uniform(rng, 2, static_cast<long>(dim / 2)));
    const std::size_t m = dim - 2 * k;
    // basis u_1..u_k, v_1..v_k, z_1..z_m
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= dim; ++i) labels.push_back("e" + std::to_string(i));
    std::vector<AlgebraSpec::Bracket> brackets;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        QVector value = zero_vector(dim);
        for (std::size_t i = 0; i < k; ++i) value[i] = Rational(uniform(rng, -2, 2), uniform(rng, 1, 2));
        for (auto& x : value) x.canonicalize();
        if (!is_zero(value)) brackets.push_back({k + a, k + b, value});
      }
    if (brackets.empty()) brackets.push_back({k, k + 1, unit_vector(dim, 0)});
    QMatrix g(dim, dim);
    for (std::size_t i = 0; i < k; ++i) {
      g(i, k + i) = 1;
      g(k + i, i) = 1;
      for (std::size_t j = i; j < k; ++j) {
        Rational s(uniform(rng, -2, 2), uniform(rng, 1, 2));
        s.canonicalize();
        g(k + i, k + j) = s;
        g(k + j, k + i) = s;
      }
    }
    for (std::size_t i = 0; i < m; ++i) g(2 * k + i, 2 * k + i) = nonzero(rng, 3);
    Instance base{AlgebraSpec::from_brackets(labels, brackets), MetricSpec(g)};
    Instance out = change_basis(base, random_unimodular(dim, rng));
    auto frame = witt_decomposition(out.algebra, out.metric);
    if (flatness_sufficient_condition(out.algebra, frame)) return out;
  }
  throw NumericalError("random_flat_instance: no admissible instance after 100 attempts");
}

Instance random_two_step(std::uint64_t seed, std::size_t max_dim) {
  std::mt19937_64 rng(seed);
  const std::size_t n = static_cast<std::size_t>(uniform(rng, 3, static_cast<long>(std::max<std::size_t>(3, max_dim))));
  const std::size_t m = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(n - 2)));
  const std::size_t d = n - m;
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
  std::vector<AlgebraSpec::Bracket> brackets;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      if (uniform(rng, 0, 3) == 0) continue;
      QVector value = zero_vector(n);
      for (std::size_t i = d; i < n; ++i) value[i] = uniform(rng, -2, 2);
      if (!is_zero(value)) brackets.push_back({a, b, value});
    }
  QMatrix diag(n, n);
  for (std::size_t i = 0; i < n; ++i) diag(i, i) = nonzero(rng, 2);
  Instance base{AlgebraSpec::from_brackets(labels, brackets), MetricSpec(diag)};
  return change_basis(base, random_unimodular(n, rng));
}

}  // namespace nilcurve
