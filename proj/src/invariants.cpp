#include "nilcurve/invariants.hpp"

#include <random>
#include <sstream>

#include "nilcurve/curvature.hpp"
#include "nilcurve/random_instances.hpp"

namespace nilcurve {

namespace {

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  std::ostringstream os;
  os << "(" << i << "," << j << "," << k << ")";
  return os.str();
}

// Records the first failure only; later ones add nothing to a diagnosis.
struct Recorder {
  InvariantCheck check;
  explicit Recorder(std::string name) { check.name = std::move(name); }
  void expect(bool cond, const std::string& what) {
    if (!cond && check.ok) {
      check.ok = false;
      check.detail = what;
    }
  }
};

InvariantCheck bch_checks(const AlgebraSpec& algebra, std::uint64_t seed) {
  Recorder r("bch_associativity");
  std::mt19937_64 rng(seed);
  const std::size_t n = algebra.dim();
  for (int trial = 0; trial < 4; ++trial) {
    GroupElement a{random_rational_vector(n, rng)}, b{random_rational_vector(n, rng)},
        c{random_rational_vector(n, rng)};
    auto left = bch_product(algebra, bch_product(algebra, a, b), c);
    auto right = bch_product(algebra, a, bch_product(algebra, b, c));
    r.expect(left == right, "(ab)c != a(bc) on trial " + std::to_string(trial));
    auto e = bch_product(algebra, a, group_inverse(a));
    r.expect(is_zero(e.log), "a a^-1 != e on trial " + std::to_string(trial));
  }
  return r.check;
}

InvariantCheck frame_checks(const AlgebraSpec& algebra, const MetricSpec& metric, const WittFrame& frame) {
  Recorder r("witt_frame");
  const std::size_t n = algebra.dim();
  const auto& u = frame.U;
  const auto& v = frame.V;
  r.expect(u.size() == v.size(), "dim U != dim V");
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) {
      r.expect(metric.inner(u[i], u[j]) == 0, "U not null");
      r.expect(metric.inner(v[i], v[j]) == 0, "V not null");
      r.expect(metric.inner(u[i], v[j]) == (i == j ? 1 : 0), "<U, V> is not the identity pairing");
    }
  auto orth = [&](const std::vector<QVector>& a, const std::vector<QVector>& b, const std::string& what) {
    for (const auto& x : a)
      for (const auto& y : b) r.expect(metric.inner(x, y) == 0, what);
  };
  orth(frame.Z, u, "Z not orthogonal to U");
  orth(frame.Z, v, "Z not orthogonal to V");
  orth(frame.Z, frame.E, "Z not orthogonal to E");
  orth(frame.E, u, "E not orthogonal to U");
  orth(frame.E, v, "E not orthogonal to V");
  auto center = algebra.center();
  auto uz = frame.center_basis();
  r.expect(span_dimension(uz, n) == span_dimension(center, n) && contains(center, uz), "U + Z is not the center");
  r.expect(span_dimension(frame.ordered_basis(), n) == n, "frame does not span");
  return r.check;
}

InvariantCheck iota_checks(const MetricSpec& metric, const WittFrame& frame) {
  Recorder r("iota_isometry");
  const auto& iota = frame.iota;
  r.expect(iota.transpose() * metric.gram() * iota == metric.gram(), "iota^T G iota != G");
  r.expect(iota * iota == QMatrix::identity(frame.dim), "iota^2 != id");
  for (std::size_t i = 0; i < frame.U.size(); ++i) {
    r.expect(iota * frame.U[i] == frame.V[i], "iota u_i != v_i");
  }
  for (const auto& z : frame.Z) r.expect(iota * z == z, "iota does not fix Z");
  for (const auto& e : frame.E) r.expect(iota * e == e, "iota does not fix E");
  return r.check;
}

}  // namespace

bool InvariantReport::ok() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

InvariantReport structural_invariants(const AlgebraSpec& algebra, const MetricSpec& metric, std::uint64_t seed) {
  InvariantReport report;
  const std::size_t n = algebra.dim();
  auto frame = witt_decomposition(algebra, metric);
  report.checks.push_back(bch_checks(algebra, seed));
  report.checks.push_back(frame_checks(algebra, metric, frame));
  report.checks.push_back(iota_checks(metric, frame));

  auto nabla = connection(algebra, metric);
  Recorder torsion("torsion_free"), compat("metric_compatible");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      torsion.expect(nabla(i, j) - nabla(j, i) == algebra.structure(i, j), triple(i, j, 0));
      for (std::size_t k = 0; k < n; ++k)
        compat.expect(metric.inner(nabla(i, j), unit_vector(n, k)) + metric.inner(unit_vector(n, j), nabla(i, k)) == 0,
                      triple(i, j, k));
    }
  report.checks.push_back(torsion.check);
  report.checks.push_back(compat.check);

  auto r = riemann(algebra, nabla);
  // lowered components R_ijkl = <R(e_i, e_j) e_k, e_l>
  std::vector<Rational> low(n * n * n * n);
  auto at = [n](std::size_t i, std::size_t j, std::size_t k, std::size_t l) { return ((i * n + j) * n + k) * n + l; };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        QVector lowered = metric.gram() * r(i, j, k);
        for (std::size_t l = 0; l < n; ++l) low[at(i, j, k, l)] = lowered[l];
      }
  Recorder bianchi("first_bianchi"), pairs("pair_symmetries");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        bianchi.expect(is_zero(r(i, j, k) + r(j, k, i) + r(k, i, j)), triple(i, j, k));
        for (std::size_t l = 0; l < n; ++l) {
          const Rational& x = low[at(i, j, k, l)];
          pairs.expect(x == -low[at(j, i, k, l)] && x == -low[at(i, j, l, k)] && x == low[at(k, l, i, j)],
                       triple(i, j, k) + " l=" + std::to_string(l));
        }
      }
  report.checks.push_back(bianchi.check);
  report.checks.push_back(pairs.check);
  return report;
}

InvariantReport catalog_properties(const CatalogEntry& entry, const NamedMetric& variant) {
  InvariantReport report;
  report.subject = entry.name + "/" + variant.name;
  auto r = riemann(entry.algebra, variant.metric);
  Recorder center("center_flat");
  center.expect(is_flat_submanifold(r, variant.metric, entry.algebra.center()), "a center plane is not homaloidal");
  report.checks.push_back(center.check);
  if (entry.name.rfind("h_p_1", 0) == 0) {
    auto ric = ricci(r);
    Recorder rf("ricci_flat"), sf("scalar_flat");
    rf.expect(ric.is_zero(), "Ricci tensor is nonzero");
    sf.expect(scalar_curvature(ric, variant.metric) == 0, "scalar curvature is nonzero");
    report.checks.push_back(rf.check);
    report.checks.push_back(sf.check);
  }
  return report;
}

}  // namespace nilcurve
