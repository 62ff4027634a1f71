#pragma once

// JSON formats for algebras, metrics, lattices and reports.

#include <json.hpp>
#include <string>

#include "nilcurve/algebra.hpp"
#include "nilcurve/lattice.hpp"
#include "nilcurve/metric.hpp"

namespace nilcurve {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& q);
QVector qvector_from_json(const Json& j);
Json qvector_to_json(const QVector& v);
Json vector_to_json(const Eigen::VectorXd& v);

// { "dim": n, "basis": [...], "brackets": [{"i": .., "j": .., "coeffs": {"k": "p/q"}}] }
AlgebraSpec algebra_from_json(const Json& j);
Json algebra_to_json(const AlgebraSpec& algebra);

// { "gram": [["p/q", ...], ...] }
MetricSpec metric_from_json(const Json& j);
Json metric_to_json(const MetricSpec& metric);

// { "generators": [[...], ...], "word_bound": k, "box": r }
LatticeSpec lattice_from_json(const Json& j, std::size_t dim);
Json lattice_to_json(const LatticeSpec& spec);

Json frame_to_json(const WittFrame& frame);

// printf("%.17g"), the fixed format used in CSV output.
std::string format_double(double x);

}  // namespace nilcurve
