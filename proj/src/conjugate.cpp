#include "nilcurve/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "nilcurve/error.hpp"
#include "nilcurve/ode.hpp"

namespace nilcurve {

const char* to_string(ConjugateSource s) {
  switch (s) {
    case ConjugateSource::numeric: return "numeric";
    case ConjugateSource::closed_form: return "closed_form";
    case ConjugateSource::both: return "both";
  }
  return "?";
}

namespace {

constexpr double kPi = std::numbers::pi;

bool time_order(const ConjugateTime& a, const ConjugateTime& b) {
  if (std::abs(a.t) != std::abs(b.t)) return std::abs(a.t) < std::abs(b.t);
  return a.t < b.t;
}

// Merges roots closer than tol, summing multiplicities.
std::vector<ConjugateTime> merge_close(std::vector<ConjugateTime> times, double tol) {
  std::sort(times.begin(), times.end(), [](const ConjugateTime& a, const ConjugateTime& b) { return a.t < b.t; });
  std::vector<ConjugateTime> out;
  for (const auto& c : times) {
    if (!out.empty() && std::abs(c.t - out.back().t) < tol) {
      out.back().multiplicity += c.multiplicity;
      out.back().merged = true;
      continue;
    }
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), time_order);
  return out;
}

struct JacobiState {
  double t;
  Eigen::VectorXd y;
};

class JacobiIntegrator {
 public:
  JacobiIntegrator(const GeodesicSystem& system, const GeodesicOptions& g) : system_(system), n_(static_cast<Eigen::Index>(system.dim())) {
    OdeOptions ode;
    ode.rtol = g.rtol;
    ode.atol = g.atol;
    ode.max_step = 0.05;
    stepper_ = std::make_unique<Dopri5>(
        [this](double, const Eigen::VectorXd& y, Eigen::VectorXd& d) { rhs(y, d); }, ode);
  }

  // (a, J, P) with J, P stored column-major.
  void rhs(const Eigen::VectorXd& y, Eigen::VectorXd& d) const {
    const Eigen::Index n = n_;
    Eigen::VectorXd a = y.head(n);
    Eigen::Map<const Eigen::MatrixXd> jm(y.data() + n, n, n);
    Eigen::Map<const Eigen::MatrixXd> pm(y.data() + n + n * n, n, n);
    Eigen::MatrixXd am = system_.nabla_matrix(a);
    Eigen::MatrixXd rm = system_.curvature_operator(a);
    d.resize(y.size());
    d.head(n) = -am * a;
    Eigen::Map<Eigen::MatrixXd> dj(d.data() + n, n, n);
    Eigen::Map<Eigen::MatrixXd> dp(d.data() + n + n * n, n, n);
    dj = pm - am * jm;
    dp = -rm * jm - am * pm;
  }

  Eigen::VectorXd initial(const Eigen::VectorXd& a0) const {
    const Eigen::Index n = n_;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n + 2 * n * n);
    y.head(n) = a0;
    Eigen::Map<Eigen::MatrixXd> pm(y.data() + n + n * n, n, n);
    pm.setIdentity();
    return y;
  }

  // Orthonormalizes the stacked [J; P] block in place.
  Eigen::VectorXd normalize(const Eigen::VectorXd& y) const {
    const Eigen::Index n = n_;
    Eigen::MatrixXd stacked(2 * n, n);
    stacked.topRows(n) = Eigen::Map<const Eigen::MatrixXd>(y.data() + n, n, n);
    stacked.bottomRows(n) = Eigen::Map<const Eigen::MatrixXd>(y.data() + n + n * n, n, n);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(stacked);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(2 * n, n);
    Eigen::VectorXd out = y;
    Eigen::Map<Eigen::MatrixXd>(out.data() + n, n, n) = q.topRows(n);
    Eigen::Map<Eigen::MatrixXd>(out.data() + n + n * n, n, n) = q.bottomRows(n);
    return out;
  }

  // Singular values (ascending) of the J block of a normalized state.
  Eigen::VectorXd singular_values(const Eigen::VectorXd& y) const {
    const Eigen::Index n = n_;
    Eigen::MatrixXd stacked(2 * n, n);
    stacked.topRows(n) = Eigen::Map<const Eigen::MatrixXd>(y.data() + n, n, n);
    stacked.bottomRows(n) = Eigen::Map<const Eigen::MatrixXd>(y.data() + n + n * n, n, n);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(stacked);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(2 * n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(q.topRows(n));
    Eigen::VectorXd s = svd.singularValues();
    std::sort(s.data(), s.data() + s.size());
    return s;
  }

  JacobiState advance(const JacobiState& from, double t) {
    stepper_->reset(from.t, from.y);
    stepper_->advance_to(t);
    return {t, normalize(stepper_->y())};
  }

 private:
  const GeodesicSystem& system_;
  Eigen::Index n_;
  std::unique_ptr<Dopri5> stepper_;
};

struct Root {
  double t;
  std::size_t multiplicity;
};

// Golden-section minimization of σ_min on [lo, hi] starting from the state at lo.
double refine_minimum(JacobiIntegrator& integ, const JacobiState& base, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  auto sigma = [&](double t) { return integ.singular_values(integ.advance(base, t).y)(0); };
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = sigma(c), fd = sigma(d);
  for (int it = 0; it < 200 && std::abs(b - a) > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
    if (std::abs(fc) < std::abs(fd)) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = sigma(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = sigma(d);
    }
  }
  return (a + b) / 2;
}

std::vector<Root> scan_direction(const GeodesicSystem& system, const Eigen::VectorXd& a0, double t_max, double dir,
                                 const JacobiScanOptions& opt, ConjugateReport& report) {
  JacobiIntegrator integ(system, opt.integrator);
  std::vector<Root> roots;
  const auto steps = static_cast<std::size_t>(std::ceil(t_max / opt.grid_step));
  JacobiState prev2{0, integ.initial(a0)};
  JacobiState prev = integ.advance(prev2, dir * opt.grid_step);
  double s_prev2 = 0;
  double s_prev = integ.singular_values(prev.y)(0);
  if (opt.record_curve) report.sigma_curve.emplace_back(prev.t, s_prev);
  for (std::size_t k = 2; k <= steps + 1; ++k) {
    JacobiState cur = integ.advance(prev, dir * opt.grid_step * static_cast<double>(k));
    if (cur.y.head(a0.size()).norm() > opt.max_speed_ratio * a0.norm())
      throw NumericalError("jacobi_conjugate_scan: velocity grew beyond " + std::to_string(opt.max_speed_ratio) +
                           " times its initial size near t = " + std::to_string(cur.t));
    double s_cur = integ.singular_values(cur.y)(0);
    if (opt.record_curve) report.sigma_curve.emplace_back(cur.t, s_cur);
    if (k >= 3 && s_prev <= s_prev2 && s_prev <= s_cur && s_prev < opt.dip_threshold) {
      double t_star = refine_minimum(integ, prev2, prev2.t, cur.t);
      Eigen::VectorXd sv = integ.singular_values(integ.advance(prev2, t_star).y);
      if (sv(0) < opt.zero_tol && std::abs(t_star) <= t_max) {
        std::size_t mult = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
          if (sv(i) < opt.multiplicity_tol) ++mult;
        roots.push_back({t_star, mult});
      }
    }
    s_prev2 = s_prev;
    prev2 = prev;
    s_prev = s_cur;
    prev = cur;
  }
  return roots;
}

}  // namespace

ConjugateReport jacobi_conjugate_scan(const GeodesicSystem& system, const Eigen::VectorXd& a0, double t_max,
                                      const JacobiScanOptions& options) {
  if (a0.size() != static_cast<Eigen::Index>(system.dim())) throw ValidationError("velocity has wrong dimension");
  if (!(t_max > 0)) throw ValidationError("t_max must be positive");
  ConjugateReport report;
  report.energy = system.energy(a0);
  std::vector<ConjugateTime> all;
  std::vector<double> dirs{1.0};
  if (options.both_directions) dirs.push_back(-1.0);
  for (double dir : dirs)
    for (const auto& r : scan_direction(system, a0, t_max, dir, options, report))
      all.push_back({r.t, r.multiplicity, ConjugateSource::numeric, false});
  std::size_t before = all.size();
  report.times = merge_close(std::move(all), options.merge_tol);
  if (report.times.size() != before) report.diagnostics.push_back("clustered roots merged");
  std::sort(report.sigma_curve.begin(), report.sigma_curve.end());
  return report;
}

PseudoHGroup make_pseudoH_group(const GeodesicSystem& system) {
  if (!is_pseudoH(system.algebra(), system.metric())) throw PreconditionError("group is not of pseudoH-type");
  PseudoHGroup g;
  g.system = &system;
  g.frame = witt_decomposition(system.algebra(), system.metric());
  g.dim_center = g.frame.Z.size();
  g.dim_complement = g.frame.E.size();
  return g;
}

PseudoHVelocity split_velocity(const PseudoHGroup& group, const Eigen::VectorXd& a0) {
  const auto& metric = group.system->metric();
  std::vector<QVector> basis = group.frame.ordered_basis();
  Eigen::MatrixXd b = to_double(QMatrix::from_columns(basis, group.frame.dim));
  Eigen::VectorXd c = b.partialPivLu().solve(a0);
  const auto m = static_cast<Eigen::Index>(group.dim_center);
  PseudoHVelocity v;
  v.z0 = b.leftCols(m) * c.head(m);
  v.x0 = a0 - v.z0;
  v.z0_norm = metric.inner(v.z0, v.z0);
  v.x0_norm = metric.inner(v.x0, v.x0);
  return v;
}

namespace {

template <class F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 400; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> transcendental_roots(RootKind kind, const RootParams& p, double t_max) {
  if (!(p.rate > 0)) throw PreconditionError("transcendental_roots: rate must be positive");
  std::vector<double> out;
  if (p.x0_norm == 0) return out;
  switch (kind) {
    case RootKind::cot: {
      // u = αt/2, h(u) = u cot u − c, strictly decreasing on each branch.
      const double c = p.energy / p.x0_norm;
      const double u_max = p.rate * t_max / 2;
      auto h = [c](double u) { return u / std::tan(u) - c; };
      if (c < 1) {
        double lo = std::min(1e-9, kPi / 4), hi = std::nextafter(kPi, 0.0);
        double u = bisect(h, lo, hi);
        if (u <= u_max) out.push_back(2 * u / p.rate);
      }
      auto f = [&](double u) { return p.x0_norm * u * std::cos(u) - p.energy * std::sin(u); };
      for (int k = 1; k * kPi < u_max; ++k) {
        double u = bisect(f, k * kPi, (k + 1) * kPi);
        if (u <= u_max) out.push_back(2 * u / p.rate);
      }
      break;
    }
    case RootKind::sin: {
      // u = αt, sin u = s·u.
      const double denom = p.energy + p.z0_norm;
      const double u_max = p.rate * t_max;
      if (denom == 0) {
        for (int k = 1; k * kPi <= u_max; ++k) out.push_back(k * kPi / p.rate);
        break;
      }
      const double s = denom / p.x0_norm;
      if (std::abs(s) >= 1) break;
      if (s == 0) {
        for (int k = 1; k * kPi <= u_max; ++k) out.push_back(k * kPi / p.rate);
        break;
      }
      auto g = [s](double u) { return std::sin(u) - s * u; };
      const double limit = std::min(u_max, 1.0 / std::abs(s) + 1.0);
      const double ac = std::acos(s);
      std::vector<double> crit;
      for (int k = 0;; ++k) {
        double c1 = ac + 2 * kPi * k, c2 = 2 * kPi * (k + 1) - ac;
        if (c1 > limit + 2 * kPi) break;
        crit.push_back(c1);
        crit.push_back(c2);
      }
      for (std::size_t i = 0; i + 1 < crit.size(); ++i) {
        double lo = crit[i], hi = crit[i + 1];
        if (lo > limit) break;
        if ((g(lo) > 0) == (g(hi) > 0)) continue;
        double u = bisect(g, lo, hi);
        if (u <= u_max) out.push_back(u / p.rate);
      }
      break;
    }
    case RootKind::coth: {
      // v = βt/2, v coth v = c has one positive root iff c > 1.
      const double c = p.energy / p.x0_norm;
      if (c <= 1) break;
      auto h = [c](double v) { return v / std::tanh(v) - c; };
      double v = bisect(h, 1e-9, c + 1);
      if (2 * v / p.rate <= t_max) out.push_back(2 * v / p.rate);
      break;
    }
    case RootKind::sinh: {
      // u = βt, sinh u = s·u has one positive root iff s > 1.
      const double denom = p.energy + p.z0_norm;
      if (denom == 0) break;
      const double s = denom / p.x0_norm;
      if (s <= 1) break;
      auto g = [s](double u) { return std::sinh(u) - s * u; };
      double hi = 1;
      while (g(hi) <= 0) hi *= 2;
      double u = bisect(g, 1e-9, hi);
      if (u / p.rate <= t_max) out.push_back(u / p.rate);
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ConjugateReport pseudoH_conjugate_times(const PseudoHGroup& group, const Eigen::VectorXd& a0, double t_max,
                                        const ClosedFormOptions& options) {
  if (group.system == nullptr) throw PreconditionError("pseudoH group not initialized");
  PseudoHVelocity v = split_velocity(group, a0);
  ConjugateReport report;
  report.z0 = v.z0;
  report.x0 = v.x0;
  report.energy = v.z0_norm + v.x0_norm;
  const double scale = std::max(1.0, a0.squaredNorm());
  const bool null = std::abs(report.energy) <= options.zero_tol * scale;
  if (!null && options.require_normalized && std::abs(std::abs(report.energy) - 1) > 1e-12)
    throw PreconditionError("velocity is not normalized to <γ̇,γ̇> = ±1");

  // Normalize, compute in the unit-speed parameter, map back.
  double c = 1;  // t_original = c * s_normalized
  double z0n = v.z0_norm, x0n = v.x0_norm, en = report.energy;
  if (!null) {
    double k2 = 1 / std::abs(en);
    c = std::sqrt(k2);
    z0n *= k2;
    x0n *= k2;
    en = en > 0 ? 1.0 : -1.0;
  }
  const double s_max = t_max / c;
  const bool z0_zero = v.z0.norm() <= options.zero_tol * std::sqrt(scale);
  const bool x0_zero = v.x0.norm() <= options.zero_tol * std::sqrt(scale);
  const std::size_t dz = group.dim_center, dv = group.dim_complement, dn = dz + dv;
  auto is_zero_value = [&](double q) { return std::abs(q) <= options.zero_tol * scale / (c * c); };

  std::vector<ConjugateTime> times;
  auto add = [&](double s, std::size_t mult) {
    if (mult == 0 || s <= 0 || s > s_max * (1 + 1e-14)) return;
    times.push_back({c * s, mult, ConjugateSource::closed_form, false});
    times.push_back({-c * s, mult, ConjugateSource::closed_form, false});
  };

  if (z0_zero && x0_zero) throw PreconditionError("zero velocity");
  if (z0_zero) {
    if (x0n < 0 && !is_zero_value(x0n)) add(std::sqrt(-12 / x0n), dz);
  } else if (x0_zero) {
    if (z0n > 0 && !is_zero_value(z0n)) {
      double alpha = std::sqrt(z0n);
      for (int k = 1; 2 * kPi * k / alpha <= s_max; ++k) add(2 * kPi * k / alpha, dv);
    }
  } else if (is_zero_value(z0n)) {
    if (x0n < 0 && !is_zero_value(x0n)) add(std::sqrt(-12 / x0n), dz - 1);
  } else {
    const bool positive = z0n > 0;
    const double rate = std::sqrt(std::abs(z0n));
    RootParams p{rate, is_zero_value(x0n) ? 0.0 : x0n, en, z0n};
    std::vector<double> r1 = transcendental_roots(positive ? RootKind::cot : RootKind::coth, p, s_max);
    std::vector<double> r2;
    if (dz >= 2) r2 = transcendental_roots(positive ? RootKind::sin : RootKind::sinh, p, s_max);
    std::vector<double> lattice;
    if (positive) {
      for (int k = 1; 2 * kPi * k / rate <= s_max * (1 + 1e-14); ++k) lattice.push_back(2 * kPi * k / rate);
      const bool degenerate = is_zero_value(en + z0n);
      for (double s : lattice) add(s, degenerate ? dn - 2 : dv - 1);
    }
    auto near = [&](const std::vector<double>& set, double s) {
      return std::any_of(set.begin(), set.end(), [&](double q) { return std::abs(q - s) < options.merge_tol; });
    };
    for (double s : r1) {
      if (near(lattice, s)) continue;
      add(s, near(r2, s) ? dz : 1);
    }
    for (double s : r2) {
      if (near(lattice, s) || near(r1, s)) continue;
      add(s, dz - 1);
    }
  }
  report.times = merge_close(std::move(times), options.merge_tol);
  return report;
}

CrossValidation cross_validate(const PseudoHGroup& group, const Eigen::VectorXd& a0, double t_max,
                               const JacobiScanOptions& scan, double time_tol) {
  CrossValidation cv;
  const GeodesicSystem& system = *group.system;
  Eigen::VectorXd a = a0;
  double en = system.energy(a0);
  if (std::abs(en) > 1e-12 * std::max(1.0, a0.squaredNorm())) a = a0 / std::sqrt(std::abs(en));
  cv.closed = pseudoH_conjugate_times(group, a, t_max);
  // Scan slightly past t_max so boundary roots are not lost to the grid.
  cv.numeric = jacobi_conjugate_scan(system, a, t_max + 4 * scan.grid_step, scan);
  std::vector<ConjugateTime> numeric;
  for (const auto& c : cv.numeric.times)
    if (std::abs(c.t) <= t_max + time_tol) numeric.push_back(c);
  std::vector<bool> used(numeric.size(), false);
  for (const auto& c : cv.closed.times) {
    CrossValidationRow row;
    row.t_closed = c.t;
    row.mult_closed = c.multiplicity;
    for (std::size_t i = 0; i < numeric.size(); ++i) {
      if (used[i] || std::abs(numeric[i].t - c.t) > time_tol) continue;
      used[i] = true;
      row.t_numeric = numeric[i].t;
      row.mult_numeric = numeric[i].multiplicity;
      row.matched = row.mult_numeric == row.mult_closed;
      break;
    }
    if (!row.matched) cv.ok = false;
    cv.rows.push_back(row);
  }
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    if (used[i]) continue;
    CrossValidationRow row;
    row.t_numeric = numeric[i].t;
    row.mult_numeric = numeric[i].multiplicity;
    cv.rows.push_back(row);
    cv.ok = false;
  }
  return cv;
}

}  // namespace nilcurve
