#include "nilcurve/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "nilcurve/curvature.hpp"
#include "nilcurve/error.hpp"

namespace nilcurve {

namespace {

QMatrix diag(const std::vector<long>& entries) {
  QMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

QMatrix block_diag(const QMatrix& a, const QMatrix& b) {
  QMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

QMatrix from_ints(const std::vector<std::vector<long>>& rows) {
  QMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::string flag_mismatch(const PropertyFlags& expected, const PropertyFlags& actual) {
  const std::pair<const char*, const std::optional<bool> PropertyFlags::*> fields[] = {
      {"flat", &PropertyFlags::flat},
      {"ricci_flat", &PropertyFlags::ricci_flat},
      {"scalar_flat", &PropertyFlags::scalar_flat},
      {"pseudoH", &PropertyFlags::pseudoH},
      {"lorentzian", &PropertyFlags::lorentzian},
      {"degenerate_center", &PropertyFlags::degenerate_center},
      {"nonsingular", &PropertyFlags::nonsingular},
  };
  for (const auto& [name, field] : fields) {
    const auto& want = expected.*field;
    const auto& got = actual.*field;
    if (want && (!got || *got != *want)) return name;
  }
  return {};
}

void check_skew(const QMatrix& j, const QMatrix& g_v, std::size_t index) {
  QMatrix s = g_v * j;
  if (!(s.transpose() == Rational(-1) * s))
    throw ValidationError("J_" + std::to_string(index + 1) + " is not skew-adjoint for the 𝔳 metric");
}

}  // namespace

const NamedMetric& CatalogEntry::metric(const std::string& variant) const {
  for (const auto& m : metrics)
    if (m.name == variant) return m;
  throw ValidationError("catalog entry " + name + " has no metric variant " + variant);
}

PropertyFlags compute_flags(const AlgebraSpec& algebra, const MetricSpec& metric) {
  PropertyFlags f;
  auto r = riemann(algebra, metric);
  f.flat = r.is_zero();
  auto ric = ricci(r);
  f.ricci_flat = ric.is_zero();
  f.scalar_flat = scalar_curvature(ric, metric) == 0;
  auto frame = witt_decomposition(algebra, metric);
  f.degenerate_center = frame.center_degenerate();
  if (!frame.center_degenerate()) f.pseudoH = is_pseudoH(algebra, metric);
  f.lorentzian = is_lorentzian(metric);
  f.nonsingular = is_nonsingular(algebra);
  return f;
}

void verify_entry(const CatalogEntry& entry) {
  for (const auto& m : entry.metrics) {
    auto actual = compute_flags(entry.algebra, m.metric);
    auto bad = flag_mismatch(m.expected, actual);
    if (!bad.empty()) throw ValidationError("catalog entry " + entry.name + "/" + m.name + ": flag " + bad + " fails");
  }
}

CatalogEntry heisenberg(std::size_t k) {
  if (k == 0) throw ValidationError("heisenberg: k must be positive");
  const std::size_t n = 2 * k + 1;
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= k; ++i) labels.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= k; ++i) labels.push_back("y" + std::to_string(i));
  labels.push_back("z");
  std::vector<AlgebraSpec::Bracket> brackets;
  for (std::size_t i = 0; i < k; ++i) brackets.push_back({i, k + i, unit_vector(n, n - 1)});
  auto algebra = AlgebraSpec::from_brackets(labels, brackets);

  const std::size_t y1 = k, z = n - 1;
  QMatrix riem = QMatrix::identity(n);
  QMatrix null_center = QMatrix::identity(n);
  null_center(y1, y1) = 0;
  null_center(z, z) = 0;
  null_center(y1, z) = 1;
  null_center(z, y1) = 1;
  QMatrix nondeg = QMatrix::identity(n);
  nondeg(y1, y1) = -1;
  QMatrix timelike_center = QMatrix::identity(n);
  timelike_center(z, z) = -1;

  PropertyFlags fr, fn, fl, ft;
  fr.flat = false;
  fr.pseudoH = true;
  fr.lorentzian = false;
  fr.degenerate_center = false;
  fr.nonsingular = true;
  fn.lorentzian = true;
  fn.degenerate_center = true;
  if (k == 1) fn.flat = true;
  fl.lorentzian = true;
  fl.degenerate_center = false;
  fl.pseudoH = false;
  ft.lorentzian = true;
  ft.degenerate_center = false;
  ft.pseudoH = false;

  return {"heisenberg_" + std::to_string(k),
          "Heisenberg algebra of dimension " + std::to_string(n),
          algebra,
          {{"riemannian", MetricSpec(riem), fr},
           {"lorentzian_null_center", MetricSpec(null_center), fn},
           {"lorentzian_nondegenerate", MetricSpec(nondeg), fl},
           {"lorentzian_timelike_center", MetricSpec(timelike_center), ft}}};
}

CatalogEntry h_p_1(std::size_t p) {
  if (p < 2) throw ValidationError("h_p_1: p must be at least 2");
  const std::size_t n = 2 * p + 1;
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= p; ++i) labels.push_back("x" + std::to_string(i));
  labels.push_back("y");
  for (std::size_t i = 1; i <= p; ++i) labels.push_back("z" + std::to_string(i));
  std::vector<AlgebraSpec::Bracket> brackets;
  for (std::size_t i = 0; i < p; ++i) brackets.push_back({i, p, unit_vector(n, p + 1 + i)});
  auto algebra = AlgebraSpec::from_brackets(labels, brackets);

  QMatrix g(n, n);
  for (std::size_t i = 0; i < p; ++i) {
    g(i, p + 1 + i) = 1;
    g(p + 1 + i, i) = 1;
  }
  g(p, p) = 1;
  PropertyFlags f;
  f.ricci_flat = true;
  f.scalar_flat = true;
  f.degenerate_center = true;
  f.lorentzian = false;
  return {"h_p_1_" + std::to_string(p), "H(p,1) with p = " + std::to_string(p) + " and a null center", algebra,
          {{"null_center", MetricSpec(g), f}}};
}

CatalogEntry algebra_from_J(const std::string& name, const std::vector<QMatrix>& js, const QMatrix& g_v,
                            const QMatrix& g_z) {
  const std::size_t d = g_v.rows(), m = g_z.rows();
  if (js.size() != m) throw ValidationError("algebra_from_J: need one J per center basis vector");
  for (std::size_t k = 0; k < m; ++k) {
    if (js[k].rows() != d || js[k].cols() != d) throw ValidationError("algebra_from_J: J has the wrong size");
    check_skew(js[k], g_v, k);
  }
  auto gz_inv = inverse(g_z);
  if (!gz_inv) throw ValidationError("algebra_from_J: center metric is degenerate");
  const std::size_t n = d + m;
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= d; ++i) labels.push_back("v" + std::to_string(i));
  for (std::size_t i = 1; i <= m; ++i) labels.push_back("z" + std::to_string(i));
  std::vector<AlgebraSpec::Bracket> brackets;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      // w_k = <J_k v_a, v_b>, then [v_a, v_b] = G_z^{-1} w
      QVector w(m);
      for (std::size_t k = 0; k < m; ++k) w[k] = form(g_v, js[k].column(a), unit_vector(d, b));
      if (is_zero(w)) continue;
      QVector c = *gz_inv * w;
      QVector value = zero_vector(n);
      for (std::size_t k = 0; k < m; ++k) value[d + k] = c[k];
      brackets.push_back({a, b, value});
    }
  auto algebra = AlgebraSpec::from_brackets(labels, brackets);
  return {name, "two-step algebra from J-maps on a " + std::to_string(d) + "-dimensional complement", algebra,
          {{"default", MetricSpec(block_diag(g_v, g_z)), {}}}};
}

CatalogEntry pseudoH_from_J(const std::string& name, const std::vector<QMatrix>& js, const QMatrix& g_v,
                            const QMatrix& g_z) {
  const std::size_t d = g_v.rows(), m = g_z.rows();
  if (js.size() != m) throw ValidationError("pseudoH_from_J: need one J per center basis vector");
  for (std::size_t k = 0; k < m; ++k) {
    if (js[k].rows() != d || js[k].cols() != d) throw ValidationError("pseudoH_from_J: J has the wrong size");
    check_skew(js[k], g_v, k);
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      QMatrix lhs = js[a] * js[b] + js[b] * js[a];
      QMatrix rhs = Rational(-2) * g_z(a, b) * QMatrix::identity(d);
      if (!(lhs == rhs))
        throw ValidationError("pseudoH_from_J: J_" + std::to_string(a + 1) + " J_" + std::to_string(b + 1) +
                              " + J_" + std::to_string(b + 1) + " J_" + std::to_string(a + 1) +
                              " != -2<z_a, z_b> Id");
    }
  auto entry = algebra_from_J(name, js, g_v, g_z);
  entry.description = "pseudoH-type group on a " + std::to_string(d) + "-dimensional complement";
  auto& f = entry.metrics[0].expected;
  f.pseudoH = true;
  f.degenerate_center = false;
  // null central directions give singular J_z
  auto sig = restricted_signature(MetricSpec(g_z), [&] {
    std::vector<QVector> all;
    for (std::size_t k = 0; k < m; ++k) all.push_back(unit_vector(m, k));
    return all;
  }());
  if (sig.p == 0 || sig.q == 0) f.nonsingular = true;
  return entry;
}

CatalogEntry quaternionic_heisenberg() {
  // left multiplication by i, j, k on H = R^4 with basis 1, i, j, k
  QMatrix li = from_ints({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
  QMatrix lj = from_ints({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}});
  QMatrix lk = from_ints({{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
  auto entry = pseudoH_from_J("quaternionic_heisenberg", {li, lj, lk}, QMatrix::identity(4), QMatrix::identity(3));
  entry.description = "quaternionic Heisenberg algebra, dimension 7 with a 3-dimensional center";
  entry.metrics[0].name = "definite";
  entry.metrics[0].expected.flat = false;
  entry.metrics[0].expected.lorentzian = false;
  PropertyFlags f;
  f.flat = false;
  f.pseudoH = false;
  f.degenerate_center = false;
  f.lorentzian = false;
  entry.metrics.push_back({"indefinite", MetricSpec(diag({1, 1, 1, 1, -1, -1, -1})), f});
  return entry;
}

namespace {

CatalogEntry split_quaternionic() {
  // Clifford triple for a center of signature (1,2) acting on R^{2,2}
  QMatrix j1 = from_ints({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
  QMatrix j2 = from_ints({{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}});
  QMatrix j3 = j1 * j2;
  auto entry = pseudoH_from_J("split_quaternionic_heisenberg", {j1, j2, j3}, diag({1, 1, -1, -1}),
                              diag({1, -1, -1}));
  entry.description = "pseudoH-type group with center of signature (1,2)";
  entry.metrics[0].name = "indefinite_center";
  entry.metrics[0].expected.lorentzian = false;
  entry.metrics[0].expected.flat = false;
  return entry;
}

CatalogEntry center_1_1() {
  QMatrix j1 = from_ints({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
  QMatrix j2 = from_ints({{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}});
  auto entry = pseudoH_from_J("pseudoH_center_1_1", {j1, j2}, diag({1, 1, -1, -1}), diag({1, -1}));
  entry.description = "pseudoH-type group with center of signature (1,1)";
  entry.metrics[0].name = "indefinite_center";
  entry.metrics[0].expected.lorentzian = false;
  return entry;
}

CatalogEntry sqrt2_type() {
  // J has eigenvalues ±i and ±i√2
  QMatrix j = from_ints({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -2}, {0, 0, 1, 0}});
  auto entry = algebra_from_J("heisenberg_type_sqrt2", {j}, diag({1, 1, 1, 2}), diag({1}));
  entry.description = "Riemannian algebra with one-dimensional center whose J has eigenvalues ±i and ±i√2";
  entry.metrics[0].name = "riemannian";
  auto& f = entry.metrics[0].expected;
  f.pseudoH = false;
  f.nonsingular = true;
  f.degenerate_center = false;
  f.lorentzian = false;
  return entry;
}

CatalogEntry abelian_plane() {
  CatalogEntry entry{"abelian_2", "abelian R^2", AlgebraSpec::abelian(2), {}};
  PropertyFlags f;
  f.flat = true;
  entry.metrics.push_back({"riemannian", MetricSpec(QMatrix::identity(2)), f});
  entry.metrics.push_back({"lorentzian", MetricSpec(diag({1, -1})), f});
  return entry;
}

}  // namespace

CatalogEntry flat_family(std::size_t dim_u, std::size_t dim_v, std::uint64_t seed) {
  if (dim_u == 0 || dim_u != dim_v) throw ValidationError("flat_family: V must pair with U (dim_U = dim_V > 0)");
  const std::size_t n = dim_u + dim_v;
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= dim_u; ++i) labels.push_back("u" + std::to_string(i));
  for (std::size_t i = 1; i <= dim_v; ++i) labels.push_back("v" + std::to_string(i));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::vector<AlgebraSpec::Bracket> brackets;
  for (std::size_t a = 0; a < dim_v; ++a)
    for (std::size_t b = a + 1; b < dim_v; ++b) {
      QVector value = zero_vector(n);
      for (std::size_t k = 0; k < dim_u; ++k) value[k] = coeff(rng);
      if (!is_zero(value)) brackets.push_back({dim_u + a, dim_u + b, value});
    }
  if (brackets.empty() && dim_v >= 2) brackets.push_back({dim_u, dim_u + 1, unit_vector(n, 0)});
  auto algebra = AlgebraSpec::from_brackets(labels, brackets);
  QMatrix g(n, n);
  for (std::size_t i = 0; i < dim_u; ++i) {
    g(i, dim_u + i) = 1;
    g(dim_u + i, i) = 1;
  }
  PropertyFlags f;
  f.flat = true;
  f.ricci_flat = true;
  f.scalar_flat = true;
  return {"flat_family_" + std::to_string(dim_u) + "_" + std::to_string(dim_v),
          "flat metric with [n,n] in U and E = Z = {0}", algebra, {{"null_pairing", MetricSpec(g), f}}};
}

CatalogEntry product_with_abelian(const CatalogEntry& entry, const std::string& variant, const QMatrix& factor_gram) {
  const auto& base = entry.algebra;
  const std::size_t n0 = base.dim(), k = factor_gram.rows(), n = n0 + k;
  std::vector<std::string> labels = base.labels();
  for (std::size_t i = 1; i <= k; ++i) labels.push_back("w" + std::to_string(i));
  std::vector<AlgebraSpec::Bracket> brackets;
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = i + 1; j < n0; ++j) {
      const auto& c = base.structure(i, j);
      if (is_zero(c)) continue;
      QVector value = zero_vector(n);
      std::copy(c.begin(), c.end(), value.begin());
      brackets.push_back({i, j, value});
    }
  const auto& m = entry.metric(variant);
  PropertyFlags f;
  if (m.expected.flat && *m.expected.flat) f.flat = true;
  return {entry.name + "_x_R" + std::to_string(k), entry.name + " times an abelian factor",
          AlgebraSpec::from_brackets(labels, brackets),
          {{variant, MetricSpec(block_diag(m.metric.gram(), factor_gram)), f}}};
}

namespace {

const std::map<std::string, std::function<CatalogEntry()>>& registry() {
  static const std::map<std::string, std::function<CatalogEntry()>> r = {
      {"abelian_2", abelian_plane},
      {"heisenberg_1", [] { return heisenberg(1); }},
      {"heisenberg_2", [] { return heisenberg(2); }},
      {"h_p_1_2", [] { return h_p_1(2); }},
      {"h_p_1_3", [] { return h_p_1(3); }},
      {"quaternionic_heisenberg", quaternionic_heisenberg},
      {"split_quaternionic_heisenberg", split_quaternionic},
      {"pseudoH_center_1_1", center_1_1},
      {"heisenberg_type_sqrt2", sqrt2_type},
      {"flat_family_2_2", [] { return flat_family(2, 2); }},
      {"flat_family_3_3", [] { return flat_family(3, 3); }},
      {"heisenberg_1_x_R1",
       [] { return product_with_abelian(heisenberg(1), "lorentzian_null_center", QMatrix::identity(1)); }},
  };
  return r;
}

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : registry()) names.push_back(name);
  return names;
}

CatalogEntry catalog_entry(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw ValidationError("unknown catalog entry " + name);
  auto entry = it->second();
  verify_entry(entry);
  return entry;
}

std::vector<CatalogEntry> shipped_catalog() {
  std::vector<CatalogEntry> all;
  for (const auto& name : catalog_names()) all.push_back(catalog_entry(name));
  return all;
}

}  // namespace nilcurve
