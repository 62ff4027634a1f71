#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "nilcurve/algebra.hpp"
#include "nilcurve/curvature.hpp"
#include "nilcurve/metric.hpp"

namespace nilcurve {

// Floating-point view of a left-invariant geometry used by every integrator.
class GeodesicSystem {
 public:
  GeodesicSystem(AlgebraSpec algebra, MetricSpec metric);

  const AlgebraSpec& algebra() const { return algebra_; }
  const MetricSpec& metric() const { return metric_; }
  std::size_t dim() const { return algebra_.dim(); }

  Eigen::VectorXd nabla(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  Eigen::MatrixXd nabla_matrix(const Eigen::VectorXd& x) const;     // y -> ∇_x y
  Eigen::MatrixXd curvature_operator(const Eigen::VectorXd& a) const;  // column i: R(e_i, a) a
  double energy(const Eigen::VectorXd& a) const { return metric_.inner(a, a); }

  // state = (a, X): ȧ = −∇_a a, Ẋ = a + ½[X, a]
  void rhs(const Eigen::VectorXd& state, Eigen::VectorXd& d) const;

 private:
  AlgebraSpec algebra_;
  MetricSpec metric_;
  std::vector<Eigen::MatrixXd> gamma_;                // gamma_[i](k, j): ∇_{e_i} e_j
  std::vector<std::vector<Eigen::MatrixXd>> riem_;    // riem_[i][j](l, k): R(e_i, e_j) e_k
};

struct GeodesicOptions {
  double rtol = 1e-12;
  double atol = 1e-14;
  double energy_rate = 1e-12;  // allowed energy change per unit time
  double sample_step = 0.1;
  std::size_t max_steps = 5'000'000;
};

struct GeodesicTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> frame_velocity;
  std::vector<Eigen::VectorXd> log_position;
  double energy = 0;
  CausalType causal = CausalType::null;

  std::size_t index_of_time(double t) const;  // index of the sample at time 0, etc.
};

struct GeodesicState {
  Eigen::VectorXd velocity;
  Eigen::VectorXd position;
};

// Samples on a grid through 0 covering [t_begin, t_end], t_begin <= 0 <= t_end.
GeodesicTrajectory integrate_geodesic(const GeodesicSystem& system, const Eigen::VectorXd& x0, double t_begin,
                                      double t_end, const GeodesicOptions& options = {},
                                      const std::optional<Eigen::VectorXd>& start = std::nullopt);

GeodesicState propagate(const GeodesicSystem& system, const GeodesicState& from, double t_from, double t_to,
                        const GeodesicOptions& options = {});

// exp(tx) is a geodesic when x ∈ 𝔷 or x ∈ U ⊕ E (exact membership).
bool is_geodesic_one_param(const QVector& x, const WittFrame& frame);
// Exact test ∇_x x = 0, the defining condition.
bool one_param_geodesic_exact(const QVector& x, const ConnectionTable& nabla);

struct AbelianSubspace {
  std::vector<QVector> basis;
  bool bound_satisfied = false;  // dim V⊕E ≥ 1 + k + k·dim 𝔷
  bool flat_certified = false;
};
std::optional<AbelianSubspace> abelian_subspace_search(const AlgebraSpec& algebra, const MetricSpec& metric,
                                                       const WittFrame& frame, const QVector& seed, std::size_t k);

// Central momenta <a(t), z_i> per sample.
std::vector<std::vector<double>> first_integrals(const GeodesicTrajectory& trajectory, const MetricSpec& metric,
                                                 const std::vector<QVector>& center);

// max_t |log(φγ(t)) − log γ(t+ω)|_∞ over samples with t+ω inside the trajectory.
double translate_check(const GeodesicSystem& system, const Eigen::VectorXd& phi, const GeodesicTrajectory& trajectory,
                       double omega, const GeodesicOptions& options = {});

struct TranslationCertificate {
  Eigen::VectorXd phi;
  double omega = 0;
  Eigen::VectorXd velocity;  // unit frame velocity a(0)
  Eigen::VectorXd start;     // log γ(0)
  GeodesicTrajectory geodesic;
  double residual = 0;
  std::size_t hits = 1;      // converged shooting seeds merged into this period
};

// Sign of the search form on the velocity sphere: timelike > 0, spacelike < 0.
enum class CausalSearch { timelike, spacelike, null };
const char* to_string(CausalSearch c);

struct PeriodSearchOptions {
  CausalSearch causal = CausalSearch::timelike;
  // Flip the sign convention used to decide timelike (Lorentz checks with a
  // (n−1,1) form treat the negative direction as timelike).
  bool negate_form = false;
  std::size_t grid_points = 1000;
  double omega_max = 10;
  std::size_t omega_samples = 400;
  double max_velocity_norm = 10;
  double seed_threshold = 0.5;
  std::size_t max_polish = 48;
  double accept_tol = 1e-9;
  double certify_tol = 1e-8;
  std::uint64_t seed = 1;
  GeodesicOptions integrator{1e-11, 1e-13, 1e-10, 0.1};
};

struct PeriodSearchStats {
  std::size_t grid_points = 0;
  std::size_t omega_samples = 0;
  std::size_t polished = 0;
  std::size_t converged = 0;
  double omega_max = 0;
};

// Precomputes unit-speed geodesics from the identity on a velocity grid and
// then searches for translations by individual elements.
class PeriodSearcher {
 public:
  PeriodSearcher(const GeodesicSystem& system, PeriodSearchOptions options);

  std::vector<TranslationCertificate> search(const Eigen::VectorXd& phi, PeriodSearchStats* stats = nullptr) const;
  std::size_t grid_size() const { return velocities_.size(); }
  const PeriodSearchOptions& options() const { return opt_; }

 private:
  Eigen::VectorXd residual(const Eigen::VectorXd& y, double omega, const Eigen::VectorXd& phi,
                           const Eigen::MatrixXd& projector) const;
  std::optional<TranslationCertificate> polish(Eigen::VectorXd y, double omega, const Eigen::VectorXd& phi,
                                               const Eigen::MatrixXd& projector) const;

  const GeodesicSystem& system_;
  PeriodSearchOptions opt_;
  Eigen::MatrixXd form_;  // the form fixing the pseudo-sphere
  std::vector<Eigen::VectorXd> velocities_;
  std::vector<std::vector<Eigen::VectorXd>> samples_;  // samples_[v][k] = (a, X) at omega_k
  std::vector<double> omegas_;
};

std::vector<TranslationCertificate> find_periods(const GeodesicSystem& system, const Eigen::VectorXd& phi,
                                                 const PeriodSearchOptions& options = {});

// Builds the certificate for exp(F) translating exp(tF/|F|), F non-null.
std::optional<TranslationCertificate> one_param_certificate(const GeodesicSystem& system, const Eigen::VectorXd& phi,
                                                            double certify_tol = 1e-8);

struct ShootingOptions {
  std::size_t restarts = 8;  // random seeds tried after the direct guess and the continuation
  std::size_t max_iterations = 60;
  double accept_tol = 1e-9;  // relative to max(1, |log target|)
  std::uint64_t seed = 1;
  // a tight step budget makes runaway trial velocities fail fast
  GeodesicOptions integrator{1e-11, 1e-13, 1e-10, 0.1, 20'000};
};

struct ShootingResult {
  Eigen::VectorXd velocity;  // a(0) with log γ(1) = target, γ(0) = identity
  double residual = 0;
  std::size_t attempts = 0;
};

// Two-point shooting from the identity by damped Newton on a ↦ log γ_a(1): direct
// guess a = log target, then continuation in the target, then random restarts.
std::optional<ShootingResult> shoot_geodesic(const GeodesicSystem& system, const Eigen::VectorXd& target,
                                             const ShootingOptions& options = {});

struct DistinguishedPeriod {
  double omega_star = 0;
  Rational omega_star_squared;  // |<z'+e*, z'+e*>|
  bool null = false;
  QVector z_star, e_star, z_prime;
};

DistinguishedPeriod distinguished_period(const QVector& phi, const AlgebraSpec& algebra, const MetricSpec& metric,
                                         const WittFrame& frame);

}  // namespace nilcurve
