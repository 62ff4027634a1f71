// nilcurve: batch front end for the library. Reads JSON specs, writes JSON or CSV reports.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "nilcurve/catalog.hpp"
#include "nilcurve/conjugate.hpp"
#include "nilcurve/curvature.hpp"
#include "nilcurve/error.hpp"
#include "nilcurve/geodesic.hpp"
#include "nilcurve/invariants.hpp"
#include "nilcurve/io.hpp"
#include "nilcurve/lattice.hpp"
#include "nilcurve/random_instances.hpp"

using namespace nilcurve;

namespace {

struct RunConfig {
  std::string algebra_path, metric_path, lattice_path;
  std::string catalog_name, variant;
  std::string velocity;
  std::string format = "json";
  std::string out;
  std::string method = "numeric";
  double t_max = 10;
  double t_min = 0;
  double step = 0.1;
  double tol = 1e-8;
  long box = -1;  // -1: take it from the lattice file
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::size_t grid = 1000;
  int threads = 0;
};

struct Geometry {
  std::string name;
  AlgebraSpec algebra;
  MetricSpec metric;
};

Geometry load_geometry(const RunConfig& cfg) {
  if (!cfg.catalog_name.empty()) {
    auto entry = catalog_entry(cfg.catalog_name);
    const auto& nm = cfg.variant.empty() ? entry.metrics.front() : entry.metric(cfg.variant);
    return {entry.name + "/" + nm.name, entry.algebra, nm.metric};
  }
  if (cfg.algebra_path.empty() || cfg.metric_path.empty())
    throw ValidationError("need --algebra and --metric, or --catalog");
  auto algebra = algebra_from_json(read_json_file(cfg.algebra_path));
  auto metric = metric_from_json(read_json_file(cfg.metric_path));
  if (metric.dim() != algebra.dim()) throw ValidationError("metric and algebra dimensions differ");
  return {cfg.algebra_path, algebra, metric};
}

LatticeSpec load_lattice(const RunConfig& cfg, std::size_t dim) {
  LatticeSpec spec = cfg.lattice_path.empty() ? integer_lattice(dim) : lattice_from_json(read_json_file(cfg.lattice_path), dim);
  if (cfg.box >= 0) spec.box = cfg.box;
  return spec;
}

QVector parse_velocity(const std::string& text, std::size_t dim) {
  if (text.empty()) throw ValidationError("need --velocity");
  QVector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_rational(item));
  if (v.size() != dim) throw ValidationError("velocity has " + std::to_string(v.size()) + " entries, expected " + std::to_string(dim));
  return v;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty())
    std::cout << text;
  else
    write_text_file(cfg.out, text);
}

void emit_json(const RunConfig& cfg, const Json& j) { emit(cfg, j.dump(2) + "\n"); }

std::string csv_row(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + "\n";
}

Json flags_to_json(const PropertyFlags& f) {
  auto opt = [](const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); };
  return {{"flat", opt(f.flat)},
          {"ricci_flat", opt(f.ricci_flat)},
          {"scalar_flat", opt(f.scalar_flat)},
          {"pseudoH", opt(f.pseudoH)},
          {"lorentzian", opt(f.lorentzian)},
          {"degenerate_center", opt(f.degenerate_center)},
          {"nonsingular", opt(f.nonsingular)}};
}

// ---- subcommands ----

int run_classify(const RunConfig& cfg) {
  auto g = load_geometry(cfg);
  auto frame = witt_decomposition(g.algebra, g.metric);
  auto sig = signature(g.metric);
  auto r = riemann(g.algebra, g.metric);
  auto ric = ricci(r);
  Json j;
  j["subject"] = g.name;
  j["dim"] = g.algebra.dim();
  j["signature"] = {sig.p, sig.q};
  j["lorentzian"] = is_lorentzian(g.metric);
  j["center_dim"] = frame.U.size() + frame.Z.size();
  j["center_degenerate"] = frame.center_degenerate();
  j["frame"] = frame_to_json(frame);
  j["pseudoH"] = frame.center_degenerate() ? Json(nullptr) : Json(is_pseudoH(g.algebra, g.metric));
  j["nonsingular"] = is_nonsingular(g.algebra);
  j["flat"] = r.is_zero();
  j["flatness_sufficient_condition"] = flatness_sufficient_condition(g.algebra, frame);
  j["ricci_flat"] = ric.is_zero();
  j["scalar_curvature"] = rational_to_json(scalar_curvature(ric, g.metric));
  j["center_flat"] = is_flat_submanifold(r, g.metric, g.algebra.center());
  j["submersion"] = to_string(submersion_type(frame));
  if (cfg.format == "csv") {
    std::string s = csv_row({"key", "value"});
    for (const auto& [k, v] : j.items())
      if (!v.is_object()) s += csv_row({k, "\"" + v.dump() + "\""});
    emit(cfg, s);
  } else {
    emit_json(cfg, j);
  }
  return 0;
}

int run_curvature(const RunConfig& cfg) {
  auto g = load_geometry(cfg);
  const std::size_t n = g.algebra.dim();
  auto nabla = connection(g.algebra, g.metric);
  auto r = riemann(g.algebra, nabla);
  auto ric = ricci(r);
  if (cfg.format == "csv") {
    std::string s = csv_row({"i", "j", "k", "l", "R_ijkl"});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t jj = 0; jj < n; ++jj)
        for (std::size_t k = 0; k < n; ++k) {
          QVector low = g.metric.gram() * r(i, jj, k);
          for (std::size_t l = 0; l < n; ++l)
            if (low[l] != 0)
              s += csv_row({std::to_string(i), std::to_string(jj), std::to_string(k), std::to_string(l),
                            format_rational(low[l])});
        }
    emit(cfg, s);
    return 0;
  }
  Json conn = Json::array(), curv = Json::array(), sect = Json::array(), ric_rows = Json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t jj = 0; jj < n; ++jj) {
      if (!is_zero(nabla(i, jj))) conn.push_back({{"i", i}, {"j", jj}, {"value", qvector_to_json(nabla(i, jj))}});
      for (std::size_t k = 0; k < n; ++k)
        if (!is_zero(r(i, jj, k)))
          curv.push_back({{"i", i}, {"j", jj}, {"k", k}, {"value", qvector_to_json(r(i, jj, k))}});
      if (i < jj)
        sect.push_back({{"i", i},
                        {"j", jj},
                        {"numerator", rational_to_json(sectional_numerator(r, g.metric, unit_vector(n, i), unit_vector(n, jj)))}});
    }
  for (std::size_t i = 0; i < n; ++i) ric_rows.push_back(qvector_to_json(ric.row(i)));
  auto cc = constant_curvature_check(r, g.metric);
  Json j = {{"subject", g.name},
            {"connection", conn},
            {"riemann", curv},
            {"sectional_numerators", sect},
            {"ricci", ric_rows},
            {"scalar_curvature", rational_to_json(scalar_curvature(ric, g.metric))},
            {"flat", r.is_zero()},
            {"constant_curvature", to_string(cc.verdict)}};
  if (cc.value) j["constant_curvature_value"] = rational_to_json(*cc.value);
  emit_json(cfg, j);
  return 0;
}

int run_geodesic(const RunConfig& cfg) {
  auto g = load_geometry(cfg);
  const std::size_t n = g.algebra.dim();
  GeodesicSystem system(g.algebra, g.metric);
  Eigen::VectorXd a0 = to_double(parse_velocity(cfg.velocity, n));
  GeodesicOptions opt;
  opt.sample_step = cfg.step;
  auto tr = integrate_geodesic(system, a0, std::min(0.0, cfg.t_min), cfg.t_max, opt);
  auto integrals = first_integrals(tr, g.metric, g.algebra.center());
  double energy_drift = 0, integral_drift = 0;
  const std::size_t i0 = tr.index_of_time(0);
  for (std::size_t s = 0; s < tr.times.size(); ++s) {
    energy_drift = std::max(energy_drift, std::abs(system.energy(tr.frame_velocity[s]) - tr.energy));
    for (std::size_t k = 0; k < integrals[s].size(); ++k)
      integral_drift = std::max(integral_drift, std::abs(integrals[s][k] - integrals[i0][k]));
  }
  if (cfg.format == "csv") {
    std::vector<std::string> head{"t"};
    for (std::size_t i = 0; i < n; ++i) head.push_back("a" + std::to_string(i + 1));
    for (std::size_t i = 0; i < n; ++i) head.push_back("x" + std::to_string(i + 1));
    head.push_back("energy");
    std::string s = csv_row(head);
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      std::vector<std::string> row{format_double(tr.times[k])};
      for (std::size_t i = 0; i < n; ++i) row.push_back(format_double(tr.frame_velocity[k][static_cast<Eigen::Index>(i)]));
      for (std::size_t i = 0; i < n; ++i) row.push_back(format_double(tr.log_position[k][static_cast<Eigen::Index>(i)]));
      row.push_back(format_double(system.energy(tr.frame_velocity[k])));
      s += csv_row(row);
    }
    emit(cfg, s);
    return 0;
  }
  Json samples = Json::array();
  for (std::size_t k = 0; k < tr.times.size(); ++k)
    samples.push_back({{"t", tr.times[k]},
                       {"velocity", vector_to_json(tr.frame_velocity[k])},
                       {"position", vector_to_json(tr.log_position[k])}});
  emit_json(cfg, {{"subject", g.name},
                  {"energy", tr.energy},
                  {"causal", to_string(tr.causal)},
                  {"energy_drift", energy_drift},
                  {"first_integral_drift", integral_drift},
                  {"samples", samples}});
  return 0;
}

Json report_to_json(const ConjugateReport& r) {
  Json times = Json::array();
  for (const auto& t : r.times)
    times.push_back({{"t", t.t}, {"multiplicity", t.multiplicity}, {"source", to_string(t.source)}, {"merged", t.merged}});
  return {{"energy", r.energy}, {"times", times}, {"diagnostics", r.diagnostics}};
}

int run_conjugate(const RunConfig& cfg) {
  auto g = load_geometry(cfg);
  GeodesicSystem system(g.algebra, g.metric);
  Eigen::VectorXd a0 = to_double(parse_velocity(cfg.velocity, g.algebra.dim()));
  Json j = {{"subject", g.name}, {"t_max", cfg.t_max}, {"method", cfg.method}};
  std::vector<std::vector<std::string>> rows;
  if (cfg.method == "numeric") {
    auto rep = jacobi_conjugate_scan(system, a0, cfg.t_max);
    j["numeric"] = report_to_json(rep);
    for (const auto& t : rep.times) rows.push_back({format_double(t.t), std::to_string(t.multiplicity), "numeric"});
  } else {
    auto group = make_pseudoH_group(system);
    if (cfg.method == "closed") {
      auto rep = pseudoH_conjugate_times(group, a0, cfg.t_max);
      j["closed_form"] = report_to_json(rep);
      for (const auto& t : rep.times) rows.push_back({format_double(t.t), std::to_string(t.multiplicity), "closed_form"});
    } else {
      auto cv = cross_validate(group, a0, cfg.t_max);
      Json table = Json::array();
      for (const auto& row : cv.rows) {
        table.push_back({{"t_closed", row.t_closed},
                         {"mult_closed", row.mult_closed},
                         {"t_numeric", row.t_numeric},
                         {"mult_numeric", row.mult_numeric},
                         {"matched", row.matched}});
        rows.push_back({format_double(row.t_closed), std::to_string(row.mult_closed), row.matched ? "matched" : "unmatched"});
      }
      j["cross_validation"] = {{"ok", cv.ok}, {"rows", table}};
    }
  }
  if (cfg.format == "csv") {
    std::string s = csv_row({"t", "multiplicity", "source"});
    for (const auto& r : rows) s += csv_row(r);
    emit(cfg, s);
  } else {
    emit_json(cfg, j);
  }
  return 0;
}

Json periods_to_json(const std::vector<ClassPeriod>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) {
    Json e = {{"representative", qvector_to_json(p.representative)},
              {"class_size", p.class_size},
              {"central", p.central},
              {"period", p.period},
              {"bucket", to_string(p.bucket)},
              {"residual", p.residual}};
    if (p.squared) e["period_squared"] = rational_to_json(*p.squared);
    a.push_back(e);
  }
  return a;
}

PeriodSearchOptions search_options(const RunConfig& cfg) {
  PeriodSearchOptions o;
  o.seed = cfg.seed;
  o.grid_points = cfg.grid;
  o.certify_tol = cfg.tol;
  o.omega_max = cfg.t_max;
  return o;
}

int run_periods(const RunConfig& cfg) {
  auto g = load_geometry(cfg);
  GeodesicSystem system(g.algebra, g.metric);
  auto frame = witt_decomposition(g.algebra, g.metric);
  Lattice lattice(g.algebra, frame, load_lattice(cfg, g.algebra.dim()));
  const long bound = lattice.spec().box;
  Json j = {{"subject", g.name}, {"box", bound}};
  std::vector<std::vector<std::string>> rows;
  if (g.algebra.is_abelian()) {
    std::vector<QVector> gens;
    for (const auto& gen : lattice.spec().generators) gens.push_back(gen.log);
    Json a = Json::array();
    for (const auto& p : flat_torus_period_spectrum(gens, g.metric, bound)) {
      Json e = {{"period", p.value}, {"multiplicity", p.multiplicity}};
      if (p.squared) e["period_squared"] = rational_to_json(*p.squared);
      a.push_back(e);
      rows.push_back({format_double(p.value), std::to_string(p.multiplicity), "torus"});
    }
    j["flat_torus_spectrum"] = a;
  } else {
    auto part = spectrum_partition(lattice, system, bound, search_options(cfg));
    j["classes"] = part.classes;
    j["classes_without_period"] = part.classes_without_period;
    j["fiber"] = periods_to_json(part.fiber);
    j["base"] = periods_to_json(part.base);
    j["excluded"] = periods_to_json(part.excluded);
    for (const auto* bucket : {&part.fiber, &part.base, &part.excluded})
      for (const auto& p : *bucket) rows.push_back({format_double(p.period), std::to_string(p.class_size), to_string(p.bucket)});
    if (!frame.center_degenerate()) {
      auto ds = distinguished_period_spectrum(lattice, g.metric, bound);
      j["distinguished"] = periods_to_json(ds.entries);
      j["distinguished_null_classes"] = ds.null_classes;
      if (ds.fiber_cross_check) j["fiber_cross_check"] = *ds.fiber_cross_check;
    }
  }
  if (cfg.format == "csv") {
    std::string s = csv_row({"period", "count", "bucket"});
    for (const auto& r : rows) s += csv_row(r);
    emit(cfg, s);
  } else {
    emit_json(cfg, j);
  }
  return 0;
}

int run_lorentz(const RunConfig& cfg) {
  auto g = load_geometry(cfg);
  GeodesicSystem system(g.algebra, g.metric);
  auto frame = witt_decomposition(g.algebra, g.metric);
  Lattice lattice(g.algebra, frame, load_lattice(cfg, g.algebra.dim()));
  auto report = lorentz_closed_geodesic_checks(lattice, system, lattice.spec().box, search_options(cfg));
  Json checks = Json::array();
  std::string csv = csv_row({"check", "scope", "elements", "grid_points", "certificates"});
  for (const auto& c : report.checks) {
    Json certs = Json::array();
    for (const auto& cert : c.certificates)
      certs.push_back({{"phi", vector_to_json(cert.phi)},
                       {"omega", cert.omega},
                       {"velocity", vector_to_json(cert.velocity)},
                       {"residual", cert.residual}});
    Json searches = Json::array();
    for (auto s : c.searches) searches.push_back(to_string(s));
    checks.push_back({{"name", c.name},
                      {"scope", c.scope},
                      {"searches", searches},
                      {"elements", c.elements},
                      {"grid_points", c.stats.grid_points},
                      {"omega_max", c.stats.omega_max},
                      {"certificates", certs}});
    csv += csv_row({c.name, c.scope, std::to_string(c.elements), std::to_string(c.stats.grid_points),
                    std::to_string(c.certificates.size())});
  }
  if (cfg.format == "csv")
    emit(cfg, csv);
  else
    emit_json(cfg, {{"subject", g.name},
                    {"timelike_negative", report.timelike_negative},
                    {"checks", checks},
                    {"violation", report.violation()}});
  if (report.violation()) {
    std::cerr << "nilcurve: closed geodesic certificate found where none may exist\n";
    return 4;
  }
  return 0;
}

Json entry_to_json(const CatalogEntry& e) {
  Json metrics = Json::array();
  for (const auto& m : e.metrics)
    metrics.push_back({{"name", m.name}, {"metric", metric_to_json(m.metric)}, {"expected", flags_to_json(m.expected)}});
  return {{"name", e.name}, {"description", e.description}, {"algebra", algebra_to_json(e.algebra)}, {"metrics", metrics}};
}

int run_catalog(const RunConfig& cfg, const std::string& action, const std::string& name) {
  if (action == "list") {
    if (cfg.format == "csv") {
      std::string s = csv_row({"name", "variants"});
      for (const auto& e : shipped_catalog()) {
        std::string vs;
        for (const auto& m : e.metrics) vs += (vs.empty() ? "" : ";") + m.name;
        s += csv_row({e.name, vs});
      }
      emit(cfg, s);
    } else {
      Json a = Json::array();
      for (const auto& e : shipped_catalog()) {
        Json vs = Json::array();
        for (const auto& m : e.metrics) vs.push_back(m.name);
        a.push_back({{"name", e.name}, {"description", e.description}, {"variants", vs}});
      }
      emit_json(cfg, a);
    }
    return 0;
  }
  if (action == "show") {
    if (name.empty()) throw ValidationError("catalog show needs an entry name");
    emit_json(cfg, entry_to_json(catalog_entry(name)));
    return 0;
  }
  throw ValidationError("catalog action must be list or show");
}

Json invariant_report_json(const InvariantReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e = {{"name", c.name}, {"ok", c.ok}};
    if (!c.ok) e["detail"] = c.detail;
    checks.push_back(e);
  }
  return {{"subject", r.subject}, {"ok", r.ok()}, {"checks", checks}};
}

int run_verify(const RunConfig& cfg) {
  Json subjects = Json::array();
  std::size_t failures = 0;
  auto record = [&](const InvariantReport& r) {
    if (!r.ok()) ++failures;
    subjects.push_back(invariant_report_json(r));
  };
  for (const auto& e : shipped_catalog())
    for (const auto& m : e.metrics) {
      auto s = structural_invariants(e.algebra, m.metric, cfg.seed);
      s.subject = e.name + "/" + m.name;
      record(s);
      record(catalog_properties(e, m));
    }
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const std::uint64_t seed = cfg.seed * 1000003 + i;
    auto in = random_two_step(seed);
    auto s = structural_invariants(in.algebra, in.metric, seed);
    s.subject = "random_two_step/" + std::to_string(seed);
    record(s);
    auto flat = random_flat_instance(seed, 4 + i % 7);
    InvariantReport f;
    f.subject = "random_flat/" + std::to_string(seed);
    f.checks.push_back({"flat", is_flat(flat.algebra, flat.metric), "curvature is nonzero"});
    if (f.checks.back().ok) f.checks.back().detail.clear();
    record(f);
  }
  if (cfg.format == "csv") {
    std::string s = csv_row({"subject", "check", "ok"});
    for (const auto& sub : subjects)
      for (const auto& c : sub["checks"])
        s += csv_row({sub["subject"].get<std::string>(), c["name"].get<std::string>(), c["ok"].get<bool>() ? "1" : "0"});
    emit(cfg, s);
  } else {
    emit_json(cfg, {{"seed", cfg.seed}, {"random_instances", cfg.count}, {"failures", failures}, {"subjects", subjects}});
  }
  if (failures) {
    std::cerr << "nilcurve: " << failures << " invariant report(s) failed\n";
    return 4;
  }
  return 0;
}

void add_geometry_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--algebra", cfg.algebra_path, "algebra JSON");
  app->add_option("--metric", cfg.metric_path, "metric JSON");
  app->add_option("--catalog", cfg.catalog_name, "use a catalog entry instead of files");
  app->add_option("--variant", cfg.variant, "metric variant of the catalog entry");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nilcurve: curvature, geodesics and closed geodesics on 2-step nilpotent groups"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string catalog_action, catalog_item;

  app.add_option("--out", cfg.out, "write the report to this file");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", cfg.threads, "worker threads (overrides NILCURVE_THREADS)")->check(CLI::NonNegativeNumber);

  auto* classify = app.add_subcommand("classify", "signature, Witt frame and flatness predicates");
  auto* curvature = app.add_subcommand("curvature", "connection and curvature tensors, exact");
  auto* geodesic = app.add_subcommand("geodesic", "integrate a geodesic from the identity");
  auto* conjugate = app.add_subcommand("conjugate", "conjugate points along a geodesic");
  auto* periods = app.add_subcommand("periods", "period spectrum of a lattice quotient");
  auto* lorentz = app.add_subcommand("lorentz", "closed geodesic searches on Lorentzian quotients");
  auto* catalog = app.add_subcommand("catalog", "named examples");
  auto* verify = app.add_subcommand("verify", "run the invariant suite over the shipped catalog");

  for (auto* sub : {classify, curvature, geodesic, conjugate, periods, lorentz}) add_geometry_options(sub, cfg);
  for (auto* sub : {classify, curvature, geodesic, conjugate, periods, lorentz, catalog, verify}) {
    sub->add_option("--out", cfg.out, "write the report to this file");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  }
  for (auto* sub : {geodesic, conjugate}) {
    sub->add_option("--velocity", cfg.velocity, "initial velocity, comma separated rationals")->required();
    sub->add_option("--tmax", cfg.t_max, "end time")->check(CLI::PositiveNumber);
  }
  geodesic->add_option("--tmin", cfg.t_min, "start time (<= 0)");
  geodesic->add_option("--step", cfg.step, "sample step")->check(CLI::PositiveNumber);
  conjugate->add_option("--method", cfg.method, "numeric, closed or both")->check(CLI::IsMember({"numeric", "closed", "both"}));
  conjugate->add_flag_callback("--closed-form", [&cfg] { cfg.method = "closed"; }, "use the pseudoH closed form");
  for (auto* sub : {periods, lorentz}) {
    sub->add_option("--lattice", cfg.lattice_path, "lattice JSON (default: integer lattice)");
    sub->add_option("--box", cfg.box, "coordinate box bound")->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", cfg.tol, "certification tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "search seed");
    sub->add_option("--grid", cfg.grid, "velocity grid points")->check(CLI::PositiveNumber);
    sub->add_option("--tmax", cfg.t_max, "largest period searched")->check(CLI::PositiveNumber);
  }
  catalog->add_option("action", catalog_action, "list or show")->required()->check(CLI::IsMember({"list", "show"}));
  catalog->add_option("name", catalog_item, "entry name for show");
  verify->add_option("--seed", cfg.seed, "seed of the random instances")->required();
  verify->add_option("--count", cfg.count, "number of random instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (cfg.threads > 0) setenv("NILCURVE_THREADS", std::to_string(cfg.threads).c_str(), 1);
  try {
    if (!std::isfinite(cfg.t_max) || !std::isfinite(cfg.t_min) || !std::isfinite(cfg.tol))
      throw ValidationError("bounds and tolerances must be finite");
    if (cfg.t_min > 0) throw ValidationError("--tmin must be <= 0");
    if (*classify) return run_classify(cfg);
    if (*curvature) return run_curvature(cfg);
    if (*geodesic) return run_geodesic(cfg);
    if (*conjugate) return run_conjugate(cfg);
    if (*periods) return run_periods(cfg);
    if (*lorentz) return run_lorentz(cfg);
    if (*catalog) return run_catalog(cfg, catalog_action, catalog_item);
    if (*verify) return run_verify(cfg);
  } catch (const Error& e) {
    std::cerr << "nilcurve: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "nilcurve: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
