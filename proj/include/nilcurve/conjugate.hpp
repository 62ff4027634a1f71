#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "nilcurve/geodesic.hpp"
#include "nilcurve/metric.hpp"

namespace nilcurve {

enum class ConjugateSource { numeric, closed_form, both };
const char* to_string(ConjugateSource s);

struct ConjugateTime {
  double t = 0;
  std::size_t multiplicity = 0;
  ConjugateSource source = ConjugateSource::numeric;
  bool merged = false;  // several roots closer than the merge tolerance
};

struct ConjugateReport {
  std::vector<ConjugateTime> times;  // ordered by |t|, negative first on ties
  Eigen::VectorXd z0, x0;
  double energy = 0;
  std::vector<std::pair<double, double>> sigma_curve;  // (t, smallest singular value)
  std::vector<std::string> diagnostics;
};

struct JacobiScanOptions {
  double grid_step = 0.005;
  double dip_threshold = 0.3;
  double zero_tol = 1e-7;
  double multiplicity_tol = 1e-5;
  double merge_tol = 1e-6;
  bool both_directions = true;
  bool record_curve = false;
  // Abort with NumericalError once |γ̇(t)| exceeds this multiple of |γ̇(0)|.
  double max_speed_ratio = 1e4;
  GeodesicOptions integrator{1e-12, 1e-14, 1e-10, 0.1};
};

// Integrates Y'' + R(Y, γ̇)γ̇ = 0 with Y(0) = 0, Y'(0) = Id in the left-invariant frame
// and reports rank drops of Y on 0 < |t| <= t_max.
ConjugateReport jacobi_conjugate_scan(const GeodesicSystem& system, const Eigen::VectorXd& a0, double t_max,
                                      const JacobiScanOptions& options = {});

// A group certified to be of pseudoH-type, with its frame.
struct PseudoHGroup {
  const GeodesicSystem* system = nullptr;
  WittFrame frame;
  std::size_t dim_center = 0;
  std::size_t dim_complement = 0;
};
PseudoHGroup make_pseudoH_group(const GeodesicSystem& system);

struct PseudoHVelocity {
  Eigen::VectorXd z0, x0;
  double z0_norm = 0;  // <z0, z0>
  double x0_norm = 0;  // <x0, x0>
};
PseudoHVelocity split_velocity(const PseudoHGroup& group, const Eigen::VectorXd& a0);

struct ClosedFormOptions {
  bool require_normalized = false;  // reject non-null velocities with |<γ̇,γ̇>| != 1
  double zero_tol = 1e-12;
  double merge_tol = 1e-9;
};

ConjugateReport pseudoH_conjugate_times(const PseudoHGroup& group, const Eigen::VectorXd& a0, double t_max,
                                        const ClosedFormOptions& options = {});

enum class RootKind { cot, sin, coth, sinh };

struct RootParams {
  double rate = 1;         // α or β
  double x0_norm = 0;      // <x0, x0>
  double energy = 0;       // <γ̇, γ̇>
  double z0_norm = 0;      // <z0, z0>
};

// Positive roots t <= t_max of the sets 𝔸₁ (cot), 𝔸₂ (sin), 𝔹₁ (coth), 𝔹₂ (sinh).
std::vector<double> transcendental_roots(RootKind kind, const RootParams& params, double t_max);

struct CrossValidationRow {
  double t_closed = 0;
  std::size_t mult_closed = 0;
  double t_numeric = 0;
  std::size_t mult_numeric = 0;
  bool matched = false;
};

struct CrossValidation {
  std::vector<CrossValidationRow> rows;
  bool ok = true;
  ConjugateReport numeric, closed;
};

CrossValidation cross_validate(const PseudoHGroup& group, const Eigen::VectorXd& a0, double t_max,
                               const JacobiScanOptions& scan = {}, double time_tol = 1e-6);

}  // namespace nilcurve
