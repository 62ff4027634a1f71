#include "nilcurve/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nilcurve/error.hpp"
#include "nilcurve/ode.hpp"

namespace nilcurve {

GeodesicSystem::GeodesicSystem(AlgebraSpec algebra, MetricSpec metric)
    : algebra_(std::move(algebra)), metric_(std::move(metric)) {
  if (algebra_.dim() != metric_.dim()) throw ValidationError("metric and algebra dimensions differ");
  ConnectionTable nabla = connection(algebra_, metric_);
  gamma_ = nabla.to_double();
  riem_ = riemann(algebra_, nabla).to_double();
}

Eigen::MatrixXd GeodesicSystem::nabla_matrix(const Eigen::VectorXd& x) const {
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < dim(); ++i) {
    double xi = x[static_cast<Eigen::Index>(i)];
    if (xi != 0) m += xi * gamma_[i];
  }
  return m;
}

Eigen::VectorXd GeodesicSystem::nabla(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  return nabla_matrix(x) * y;
}

Eigen::MatrixXd GeodesicSystem::curvature_operator(const Eigen::VectorXd& a) const {
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < dim(); ++i) {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(n);
    for (std::size_t j = 0; j < dim(); ++j) {
      double aj = a[static_cast<Eigen::Index>(j)];
      if (aj != 0) col += aj * (riem_[i][j] * a);
    }
    m.col(static_cast<Eigen::Index>(i)) = col;
  }
  return m;
}

void GeodesicSystem::rhs(const Eigen::VectorXd& state, Eigen::VectorXd& d) const {
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::VectorXd a = state.head(n);
  Eigen::VectorXd x = state.segment(n, n);
  d.resize(2 * n);
  d.head(n) = -nabla(a, a);
  d.segment(n, n) = a + 0.5 * algebra_.bracket(x, a);
}

std::size_t GeodesicTrajectory::index_of_time(double t) const {
  auto it = std::lower_bound(times.begin(), times.end(), t - 1e-12);
  return static_cast<std::size_t>(it - times.begin());
}

namespace {

Dopri5 make_stepper(const GeodesicSystem& system, const GeodesicOptions& options) {
  OdeOptions ode;
  ode.rtol = options.rtol;
  ode.atol = options.atol;
  ode.max_step = std::max(options.sample_step, 1e-3);
  ode.max_steps = options.max_steps;
  const auto n = static_cast<Eigen::Index>(system.dim());
  ode.invariant = [&system, n](const Eigen::VectorXd& y) { return system.energy(y.head(n)); };
  // roundoff in the energy grows with |a|^2
  ode.invariant_scale = [n](const Eigen::VectorXd& y) { return std::max(1.0, y.head(n).squaredNorm()); };
  ode.invariant_rate = options.energy_rate;
  ode.invariant_floor = 64 * std::numeric_limits<double>::epsilon();
  return Dopri5([&system](double, const Eigen::VectorXd& y, Eigen::VectorXd& d) { system.rhs(y, d); }, ode);
}

Eigen::VectorXd pack(const Eigen::VectorXd& a, const Eigen::VectorXd& x) {
  Eigen::VectorXd s(a.size() + x.size());
  s << a, x;
  return s;
}

}  // namespace

GeodesicState propagate(const GeodesicSystem& system, const GeodesicState& from, double t_from, double t_to,
                        const GeodesicOptions& options) {
  const auto n = static_cast<Eigen::Index>(system.dim());
  Dopri5 stepper = make_stepper(system, options);
  stepper.reset(t_from, pack(from.velocity, from.position));
  stepper.advance_to(t_to);
  return {stepper.y().head(n), stepper.y().segment(n, n)};
}

GeodesicTrajectory integrate_geodesic(const GeodesicSystem& system, const Eigen::VectorXd& x0, double t_begin,
                                      double t_end, const GeodesicOptions& options,
                                      const std::optional<Eigen::VectorXd>& start) {
  const auto n = static_cast<Eigen::Index>(system.dim());
  if (x0.size() != n) throw ValidationError("initial velocity has wrong dimension");
  if (!(t_begin <= 0 && 0 <= t_end)) throw ValidationError("time span must contain 0");
  if (!(options.sample_step > 0)) throw ValidationError("sample step must be positive");
  Eigen::VectorXd x_start = start ? *start : Eigen::VectorXd::Zero(n);

  GeodesicTrajectory traj;
  traj.energy = system.energy(x0);
  traj.causal = causal_type(x0, system.metric(), 0.0);

  auto run = [&](double t_stop, std::vector<double>& ts, std::vector<Eigen::VectorXd>& as,
                 std::vector<Eigen::VectorXd>& xs) {
    if (t_stop == 0) return;
    Dopri5 stepper = make_stepper(system, options);
    stepper.reset(0.0, pack(x0, x_start));
    const double dir = t_stop > 0 ? 1.0 : -1.0;
    const auto count = static_cast<std::size_t>(std::ceil(std::abs(t_stop) / options.sample_step - 1e-9));
    for (std::size_t k = 1; k <= count; ++k) {
      double t = k == count ? t_stop : dir * static_cast<double>(k) * options.sample_step;
      stepper.advance_to(t);
      ts.push_back(t);
      as.push_back(stepper.y().head(n));
      xs.push_back(stepper.y().segment(n, n));
    }
  };

  std::vector<double> tb, tf;
  std::vector<Eigen::VectorXd> ab, af, xb, xf;
  run(t_begin, tb, ab, xb);
  run(t_end, tf, af, xf);
  for (std::size_t i = tb.size(); i-- > 0;) {
    traj.times.push_back(tb[i]);
    traj.frame_velocity.push_back(ab[i]);
    traj.log_position.push_back(xb[i]);
  }
  traj.times.push_back(0.0);
  traj.frame_velocity.push_back(x0);
  traj.log_position.push_back(x_start);
  for (std::size_t i = 0; i < tf.size(); ++i) {
    traj.times.push_back(tf[i]);
    traj.frame_velocity.push_back(af[i]);
    traj.log_position.push_back(xf[i]);
  }
  return traj;
}

bool is_geodesic_one_param(const QVector& x, const WittFrame& frame) {
  if (in_span(frame.center_basis(), x)) return true;
  std::vector<QVector> ue = frame.U;
  ue.insert(ue.end(), frame.E.begin(), frame.E.end());
  return in_span(ue, x);
}

bool one_param_geodesic_exact(const QVector& x, const ConnectionTable& nabla) { return is_zero(nabla.apply(x, x)); }

std::optional<AbelianSubspace> abelian_subspace_search(const AlgebraSpec& algebra, const MetricSpec& metric,
                                                       const WittFrame& frame, const QVector& seed, std::size_t k) {
  const std::size_t n = algebra.dim();
  auto complement = frame.complement_basis();
  if (is_zero(seed) || !in_span(complement, seed)) throw PreconditionError("seed must be a nonzero vector of V ⊕ E");
  AbelianSubspace out;
  out.bound_satisfied = complement.size() >= 1 + k + k * frame.center_basis().size();
  out.basis.push_back(seed);
  while (out.basis.size() < k + 1) {
    // w = Σ c_i v_i with [w, s] = 0 for all s in the current basis.
    QMatrix system(n * out.basis.size(), complement.size());
    for (std::size_t c = 0; c < complement.size(); ++c)
      for (std::size_t s = 0; s < out.basis.size(); ++s) {
        QVector b = algebra.bracket(complement[c], out.basis[s]);
        for (std::size_t r = 0; r < n; ++r) system(s * n + r, c) = b[r];
      }
    bool extended = false;
    for (const auto& coeff : null_space(system)) {
      QVector w = zero_vector(n);
      for (std::size_t c = 0; c < complement.size(); ++c) axpy(w, coeff[c], complement[c]);
      auto trial = out.basis;
      trial.push_back(w);
      if (span_dimension(trial, n) == trial.size()) {
        out.basis.push_back(std::move(w));
        extended = true;
        break;
      }
    }
    if (!extended) return std::nullopt;
  }
  out.flat_certified = is_flat_submanifold(riemann(algebra, metric), metric, out.basis);
  return out;
}

std::vector<std::vector<double>> first_integrals(const GeodesicTrajectory& trajectory, const MetricSpec& metric,
                                                 const std::vector<QVector>& center) {
  std::vector<Eigen::VectorXd> zs;
  for (const auto& z : center) zs.push_back(metric.gram_d() * to_double(z));
  std::vector<std::vector<double>> out;
  for (const auto& a : trajectory.frame_velocity) {
    std::vector<double> row;
    for (const auto& gz : zs) row.push_back(a.dot(gz));
    out.push_back(std::move(row));
  }
  return out;
}

double translate_check(const GeodesicSystem& system, const Eigen::VectorXd& phi, const GeodesicTrajectory& trajectory,
                       double omega, const GeodesicOptions& options) {
  if (trajectory.times.empty() || trajectory.times.back() - trajectory.times.front() < omega)
    throw PreconditionError("translate_check: trajectory does not cover the shift");
  double residual = 0;
  const double t_last = trajectory.times.back();
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    const double target = trajectory.times[i] + omega;
    if (target > t_last + 1e-12) break;
    // Nearest sample at or below the target, then a short integration.
    auto it = std::upper_bound(trajectory.times.begin(), trajectory.times.end(), target + 1e-12);
    std::size_t k = static_cast<std::size_t>(it - trajectory.times.begin()) - 1;
    GeodesicState s{trajectory.frame_velocity[k], trajectory.log_position[k]};
    if (std::abs(trajectory.times[k] - target) > 1e-14) s = propagate(system, s, trajectory.times[k], target, options);
    Eigen::VectorXd moved = bch_product(system.algebra(), phi, trajectory.log_position[i]);
    residual = std::max(residual, (moved - s.position).lpNorm<Eigen::Infinity>());
  }
  return residual;
}

const char* to_string(CausalSearch c) {
  switch (c) {
    case CausalSearch::timelike: return "timelike";
    case CausalSearch::spacelike: return "spacelike";
    case CausalSearch::null: return "null";
  }
  return "?";
}

namespace {

double target_sign(CausalSearch c) {
  switch (c) {
    case CausalSearch::timelike: return 1.0;
    case CausalSearch::spacelike: return -1.0;
    case CausalSearch::null: return 0.0;
  }
  return 0.0;
}

// Orthogonal projector onto the Euclidean complement of range(ad_F).
Eigen::MatrixXd quotient_projector(const AlgebraSpec& algebra, const Eigen::VectorXd& phi) {
  Eigen::MatrixXd ad = algebra.ad(phi);
  const auto n = ad.rows();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ad, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  double tol = 1e-10 * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol) p -= svd.matrixU().col(i) * svd.matrixU().col(i).transpose();
  return p;
}

}  // namespace

PeriodSearcher::PeriodSearcher(const GeodesicSystem& system, PeriodSearchOptions options)
    : system_(system), opt_(std::move(options)) {
  const auto n = static_cast<Eigen::Index>(system_.dim());
  form_ = opt_.negate_form ? Eigen::MatrixXd(-system_.metric().gram_d()) : system_.metric().gram_d();
  const double sign = target_sign(opt_.causal);
  std::mt19937_64 rng(opt_.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::size_t attempts = 0;
  while (velocities_.size() < opt_.grid_points && attempts < 1000 * opt_.grid_points) {
    ++attempts;
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y[i] = normal(rng);
    y.normalize();
    double q = y.dot(form_ * y);
    if (sign == 0.0) {
      // Project onto the null cone along the form's eigenbasis.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(form_);
      Eigen::VectorXd c = es.eigenvectors().transpose() * y;
      double pos = 0, neg = 0;
      for (Eigen::Index i = 0; i < n; ++i) (es.eigenvalues()[i] > 0 ? pos : neg) += es.eigenvalues()[i] * c[i] * c[i];
      if (pos <= 0 || neg >= 0) continue;
      double scale = std::sqrt(-neg / pos);
      for (Eigen::Index i = 0; i < n; ++i)
        if (es.eigenvalues()[i] > 0) c[i] *= scale;
      y = (es.eigenvectors() * c).normalized();
    } else {
      if (q * sign <= 1e-6) continue;
      y /= std::sqrt(q * sign);
      if (y.norm() > opt_.max_velocity_norm) continue;
    }
    velocities_.push_back(y);
  }
  for (std::size_t k = 1; k <= opt_.omega_samples; ++k)
    omegas_.push_back(opt_.omega_max * static_cast<double>(k) / static_cast<double>(opt_.omega_samples));
  GeodesicOptions g = opt_.integrator;
  g.sample_step = opt_.omega_max / static_cast<double>(opt_.omega_samples);
  samples_.reserve(velocities_.size());
  for (const auto& y : velocities_) {
    auto traj = integrate_geodesic(system_, y, 0.0, opt_.omega_max, g);
    std::vector<Eigen::VectorXd> row;
    for (std::size_t k = 1; k < traj.times.size(); ++k) row.push_back(pack(traj.frame_velocity[k], traj.log_position[k]));
    samples_.push_back(std::move(row));
  }
}

Eigen::VectorXd PeriodSearcher::residual(const Eigen::VectorXd& y, double omega, const Eigen::VectorXd& phi,
                                         const Eigen::MatrixXd& projector) const {
  const auto n = static_cast<Eigen::Index>(system_.dim());
  GeodesicState end = propagate(system_, {y, Eigen::VectorXd::Zero(n)}, 0.0, omega, opt_.integrator);
  const bool null = opt_.causal == CausalSearch::null;
  Eigen::VectorXd r(2 * n + (null ? 2 : 1));
  r.head(n) = end.velocity - y;
  r.segment(n, n) = projector * (end.position - phi);
  double q = y.dot(form_ * y);
  if (null) {
    r[2 * n] = q;
    r[2 * n + 1] = y.squaredNorm() - 1.0;
  } else {
    r[2 * n] = q - target_sign(opt_.causal);
  }
  return r;
}

std::optional<TranslationCertificate> PeriodSearcher::polish(Eigen::VectorXd y, double omega,
                                                             const Eigen::VectorXd& phi,
                                                             const Eigen::MatrixXd& projector) const {
  const auto n = static_cast<Eigen::Index>(system_.dim());
  Eigen::VectorXd z(n + 1);
  z << y, omega;
  const Eigen::Index r_size = 2 * n + (opt_.causal == CausalSearch::null ? 2 : 1);
  auto eval = [&](const Eigen::VectorXd& p) {
    if (p[n] <= 0 || p[n] > 1.5 * opt_.omega_max) return Eigen::VectorXd(Eigen::VectorXd::Constant(r_size, 1e6));
    return residual(p.head(n), p[n], phi, projector);
  };
  Eigen::VectorXd r = eval(z);
  double mu = 1e-3;
  for (int iter = 0; iter < 60 && r.norm() > 0.05 * opt_.accept_tol; ++iter) {
    Eigen::MatrixXd jac(r.size(), n + 1);
    for (Eigen::Index j = 0; j <= n; ++j) {
      Eigen::VectorXd zp = z;
      double h = 1e-7 * std::max(1.0, std::abs(z[j]));
      zp[j] += h;
      jac.col(j) = (eval(zp) - r) / h;
    }
    Eigen::MatrixXd jtj = jac.transpose() * jac;
    Eigen::VectorXd g = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 12; ++tries) {
      Eigen::MatrixXd a = jtj + mu * Eigen::MatrixXd::Identity(n + 1, n + 1);
      Eigen::VectorXd step = a.ldlt().solve(-g);
      Eigen::VectorXd zn = z + step;
      Eigen::VectorXd rn = eval(zn);
      if (rn.norm() < r.norm()) {
        z = zn;
        r = rn;
        mu = std::max(mu / 10, 1e-15);
        improved = true;
        break;
      }
      mu *= 10;
    }
    if (!improved) break;
  }
  if (r.norm() > opt_.accept_tol) return std::nullopt;

  TranslationCertificate cert;
  cert.phi = phi;
  cert.omega = z[n];
  cert.velocity = z.head(n);
  GeodesicState end = propagate(system_, {cert.velocity, Eigen::VectorXd::Zero(n)}, 0.0, cert.omega, opt_.integrator);
  // p with [F, P] = X(ω) − F; then φ translates p·Γ.
  Eigen::MatrixXd ad = system_.algebra().ad(phi);
  cert.start = ad.completeOrthogonalDecomposition().solve(Eigen::VectorXd(end.position - phi));
  GeodesicOptions g = opt_.integrator;
  g.sample_step = cert.omega / 32;
  cert.geodesic = integrate_geodesic(system_, cert.velocity, 0.0, 2 * cert.omega, g, cert.start);
  cert.residual = translate_check(system_, phi, cert.geodesic, cert.omega, g);
  if (cert.residual > opt_.certify_tol) return std::nullopt;
  return cert;
}

std::vector<TranslationCertificate> PeriodSearcher::search(const Eigen::VectorXd& phi, PeriodSearchStats* stats) const {
  const auto n = static_cast<Eigen::Index>(system_.dim());
  Eigen::MatrixXd projector = quotient_projector(system_.algebra(), phi);
  struct Candidate {
    double value;
    std::size_t v, k;
  };
  std::vector<Candidate> candidates;
  const double threshold = opt_.seed_threshold * (1.0 + phi.norm());
  for (std::size_t v = 0; v < velocities_.size(); ++v) {
    const auto& row = samples_[v];
    std::vector<double> vals(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) {
      Eigen::VectorXd a = row[k].head(n), x = row[k].segment(n, n);
      vals[k] = std::sqrt((a - velocities_[v]).squaredNorm() + (projector * (x - phi)).squaredNorm());
    }
    for (std::size_t k = 0; k < vals.size(); ++k) {
      bool left = k == 0 || vals[k] <= vals[k - 1];
      bool right = k + 1 == vals.size() || vals[k] <= vals[k + 1];
      if (left && right && vals[k] < threshold) candidates.push_back({vals[k], v, k});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.v != b.v ? a.v < b.v : a.k < b.k;
  });
  if (candidates.size() > opt_.max_polish) candidates.resize(opt_.max_polish);

  std::vector<TranslationCertificate> found;
  std::size_t converged = 0;
  for (const auto& c : candidates) {
    auto cert = polish(velocities_[c.v], omegas_[c.k], phi, projector);
    if (!cert) continue;
    ++converged;
    auto same = std::find_if(found.begin(), found.end(),
                             [&](const TranslationCertificate& f) { return std::abs(f.omega - cert->omega) < 1e-7; });
    if (same != found.end()) {
      ++same->hits;
    } else {
      found.push_back(std::move(*cert));
    }
  }
  std::sort(found.begin(), found.end(),
            [](const TranslationCertificate& a, const TranslationCertificate& b) { return a.omega < b.omega; });
  if (stats) {
    stats->grid_points += velocities_.size();
    stats->omega_samples = omegas_.size();
    stats->polished += candidates.size();
    stats->converged += converged;
    stats->omega_max = opt_.omega_max;
  }
  return found;
}

std::vector<TranslationCertificate> find_periods(const GeodesicSystem& system, const Eigen::VectorXd& phi,
                                                 const PeriodSearchOptions& options) {
  PeriodSearcher searcher(system, options);
  return searcher.search(phi);
}

std::optional<TranslationCertificate> one_param_certificate(const GeodesicSystem& system, const Eigen::VectorXd& phi,
                                                            double certify_tol) {
  double q = system.energy(phi);
  if (std::abs(q) <= 1e-14 * std::max(1.0, phi.squaredNorm())) return std::nullopt;
  TranslationCertificate cert;
  cert.phi = phi;
  cert.omega = std::sqrt(std::abs(q));
  cert.velocity = phi / cert.omega;
  cert.start = Eigen::VectorXd::Zero(phi.size());
  GeodesicOptions g;
  g.sample_step = cert.omega / 32;
  cert.geodesic = integrate_geodesic(system, cert.velocity, 0.0, 2 * cert.omega, g);
  cert.residual = translate_check(system, phi, cert.geodesic, cert.omega, g);
  if (cert.residual > certify_tol) return std::nullopt;
  return cert;
}

std::optional<ShootingResult> shoot_geodesic(const GeodesicSystem& system, const Eigen::VectorXd& target,
                                             const ShootingOptions& options) {
  const auto n = static_cast<Eigen::Index>(system.dim());
  if (target.size() != n) throw ValidationError("shooting target has wrong dimension");
  const double scale = std::max(1.0, target.norm());
  const double cap = 100 * scale;
  const double accept = options.accept_tol * scale;
  auto eval = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& goal) -> Eigen::VectorXd {
    if (!a.allFinite() || a.norm() > cap) return Eigen::VectorXd::Constant(n, 1e6);
    try {
      return propagate(system, {a, Eigen::VectorXd::Zero(n)}, 0.0, 1.0, options.integrator).position - goal;
    } catch (const NumericalError&) {
      return Eigen::VectorXd::Constant(n, 1e6);
    }
  };
  // Levenberg-damped Newton; returns the final residual norm.
  auto solve = [&](Eigen::VectorXd& a, const Eigen::VectorXd& goal, double tol) {
    Eigen::VectorXd r = eval(a, goal);
    double mu = 1e-3;
    for (std::size_t iter = 0; iter < options.max_iterations && r.norm() > 0.05 * tol; ++iter) {
      Eigen::MatrixXd jac(n, n);
      for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::VectorXd ap = a;
        double h = 1e-7 * std::max(1.0, std::abs(a[j]));
        ap[j] += h;
        jac.col(j) = (eval(ap, goal) - r) / h;
      }
      Eigen::MatrixXd jtj = jac.transpose() * jac;
      Eigen::VectorXd g = jac.transpose() * r;
      bool improved = false;
      for (int tries = 0; tries < 12; ++tries) {
        Eigen::VectorXd an = a + (jtj + mu * Eigen::MatrixXd::Identity(n, n)).ldlt().solve(-g);
        Eigen::VectorXd rn = eval(an, goal);
        if (rn.norm() < r.norm()) {
          a = an;
          r = rn;
          mu = std::max(mu / 10, 1e-15);
          improved = true;
          break;
        }
        mu *= 10;
      }
      if (!improved) break;
    }
    return r.norm();
  };

  std::size_t attempts = 1;
  Eigen::VectorXd a = target;
  double res = solve(a, target, accept);
  if (res <= accept) return ShootingResult{a, res, attempts};

  // continuation along s·target from the identity, each stage warm-started
  for (std::size_t stages = 8; stages <= 64; stages *= 2) {
    ++attempts;
    a = Eigen::VectorXd::Zero(n);
    bool ok = true;
    for (std::size_t k = 1; k <= stages && ok; ++k) {
      const double s = static_cast<double>(k) / static_cast<double>(stages);
      const double tol = k == stages ? accept : 1e-6 * scale;
      ok = solve(a, Eigen::VectorXd(s * target), tol) <= tol;
    }
    if (ok) return ShootingResult{a, eval(a, target).norm(), attempts};
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  for (std::size_t restart = 0; restart < options.restarts; ++restart) {
    ++attempts;
    a = target;
    for (Eigen::Index i = 0; i < n; ++i) a[i] += normal(rng) * std::max(1.0, target.norm());
    res = solve(a, target, accept);
    if (res <= accept) return ShootingResult{a, res, attempts};
  }
  return std::nullopt;
}

DistinguishedPeriod distinguished_period(const QVector& phi, const AlgebraSpec& algebra, const MetricSpec& metric,
                                         const WittFrame& frame) {
  if (frame.center_degenerate()) throw PreconditionError("distinguished_period: center is degenerate");
  const std::size_t n = algebra.dim();
  DistinguishedPeriod out;
  auto [z_star, e_star] = split_center(frame, phi);
  out.z_star = z_star;
  out.e_star = e_star;
  std::vector<QVector> image;
  for (std::size_t j = 0; j < n; ++j) image.push_back(algebra.bracket(e_star, unit_vector(n, j)));
  auto s = row_space_basis(image, n);
  QVector z_prime = z_star;
  if (!s.empty()) {
    QMatrix gs(s.size(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j) gs(i, j) = metric.inner(s[i], s[j]);
    auto gs_inv = inverse(gs);
    if (!gs_inv) throw PreconditionError("distinguished_period: [e*, n] is degenerate; orthogonal projection undefined");
    QVector rhs(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) rhs[i] = metric.inner(s[i], z_star);
    QVector c = *gs_inv * rhs;
    for (std::size_t i = 0; i < s.size(); ++i) axpy(z_prime, -c[i], s[i]);
  }
  out.z_prime = z_prime;
  QVector w = z_prime + e_star;
  Rational q = metric.inner(w, w);
  out.omega_star_squared = abs(q);
  out.null = q == 0;
  out.omega_star = std::sqrt(out.omega_star_squared.get_d());
  return out;
}

}  // namespace nilcurve
