#include "nilcurve/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nilcurve/error.hpp"

namespace nilcurve {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  throw ValidationError("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

Json rational_to_json(const Rational& q) { return format_rational(q); }

QVector qvector_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of rationals");
  QVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

Json qvector_to_json(const QVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational_to_json(x));
  return a;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

AlgebraSpec algebra_from_json(const Json& j) {
  try {
    const std::size_t n = j.at("dim").get<std::size_t>();
    if (n == 0) throw ValidationError("algebra: dim must be positive");
    std::vector<std::string> labels;
    if (j.contains("basis")) {
      labels = j.at("basis").get<std::vector<std::string>>();
      if (labels.size() != n) throw ValidationError("algebra: basis has the wrong length");
    } else {
      for (std::size_t i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
    }
    std::vector<std::vector<QVector>> c(n, std::vector<QVector>(n, zero_vector(n)));
    std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
    for (const auto& b : j.value("brackets", Json::array())) {
      const auto i = b.at("i").get<std::size_t>(), k = b.at("j").get<std::size_t>();
      if (i >= n || k >= n) throw ValidationError("algebra: bracket index out of range");
      if (i == k) throw ValidationError("algebra: bracket [e_i, e_i] must not be listed");
      QVector value = zero_vector(n);
      for (const auto& [key, coeff] : b.at("coeffs").items()) {
        std::size_t idx = std::stoul(key);
        if (idx >= n) throw ValidationError("algebra: coefficient index out of range");
        value[idx] = rational_from_json(coeff);
      }
      if (given[i][k]) throw ValidationError("algebra: bracket listed twice");
      given[i][k] = true;
      c[i][k] = value;
      // when both orders are listed the constructor checks antisymmetry
      if (!given[k][i]) c[k][i] = -value;
    }
    return AlgebraSpec(labels, c, j.value("irrational", false));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("algebra JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ValidationError("algebra JSON: coefficient keys must be basis indices");
  }
}

Json algebra_to_json(const AlgebraSpec& algebra) {
  const std::size_t n = algebra.dim();
  Json brackets = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) {
      const auto& v = algebra.structure(i, k);
      if (is_zero(v)) continue;
      Json coeffs = Json::object();
      for (std::size_t l = 0; l < n; ++l)
        if (v[l] != 0) coeffs[std::to_string(l)] = rational_to_json(v[l]);
      brackets.push_back({{"i", i}, {"j", k}, {"coeffs", coeffs}});
    }
  Json out = {{"dim", n}, {"basis", algebra.labels()}, {"brackets", brackets}};
  if (algebra.declared_irrational()) out["irrational"] = true;
  return out;
}

MetricSpec metric_from_json(const Json& j) {
  try {
    const auto& rows = j.at("gram");
    if (!rows.is_array() || rows.empty()) throw ValidationError("metric: gram must be a nonempty array");
    const std::size_t n = rows.size();
    QMatrix g(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      QVector row = qvector_from_json(rows[r]);
      if (row.size() != n) throw ValidationError("metric: gram must be square");
      for (std::size_t c = 0; c < n; ++c) g(r, c) = row[c];
    }
    return MetricSpec(g);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("metric JSON: ") + e.what());
  }
}

Json metric_to_json(const MetricSpec& metric) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < metric.dim(); ++r) rows.push_back(qvector_to_json(metric.gram().row(r)));
  return {{"gram", rows}};
}

LatticeSpec lattice_from_json(const Json& j, std::size_t dim) {
  try {
    LatticeSpec spec;
    for (const auto& g : j.at("generators")) {
      QVector v = qvector_from_json(g);
      if (v.size() != dim) throw ValidationError("lattice: generator has the wrong dimension");
      spec.generators.push_back({v});
    }
    spec.word_bound = j.value("word_bound", std::size_t{2});
    spec.box = j.value("box", 1L);
    if (spec.box < 0) throw ValidationError("lattice: box must be nonnegative");
    return spec;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("lattice JSON: ") + e.what());
  }
}

Json lattice_to_json(const LatticeSpec& spec) {
  Json gens = Json::array();
  for (const auto& g : spec.generators) gens.push_back(qvector_to_json(g.log));
  return {{"generators", gens}, {"word_bound", spec.word_bound}, {"box", spec.box}};
}

Json frame_to_json(const WittFrame& frame) {
  auto list = [](const std::vector<QVector>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(qvector_to_json(v));
    return a;
  };
  Json iota = Json::array();
  for (std::size_t r = 0; r < frame.iota.rows(); ++r) iota.push_back(qvector_to_json(frame.iota.row(r)));
  return {{"U", list(frame.U)}, {"Z", list(frame.Z)}, {"V", list(frame.V)}, {"E", list(frame.E)}, {"iota", iota}};
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace nilcurve
