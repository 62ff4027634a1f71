#include "nilcurve/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nilcurve/error.hpp"

namespace nilcurve {

namespace {

// Dormand–Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

Dopri5::Dopri5(OdeRhs rhs, OdeOptions options) : rhs_(std::move(rhs)), opt_(std::move(options)) {}

void Dopri5::reset(double t, const Eigen::VectorXd& y) {
  t_ = t;
  y_ = y;
  have_k1_ = false;
  if (h_ == 0) h_ = opt_.initial_step;
}

void Dopri5::set_state(const Eigen::VectorXd& y) {
  y_ = y;
  have_k1_ = false;
}

void Dopri5::advance_to(double t_target) {
  const double span = t_target - t_;
  if (span == 0) return;
  const double dir = span > 0 ? 1.0 : -1.0;
  const auto n = y_.size();
  Eigen::VectorXd k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y_new(n), err(n);
  if (!have_k1_) {
    k1_.resize(n);
    rhs_(t_, y_, k1_);
    have_k1_ = true;
  }
  double h = std::min(std::abs(h_), opt_.max_step);
  std::size_t steps = 0;
  while (dir * (t_target - t_) > 0) {
    if (++steps > opt_.max_steps) throw NumericalError("integrator exceeded the step budget");
    const double remaining = std::abs(t_target - t_);
    bool last = false;
    double step = h;
    if (step >= remaining) {
      step = remaining;
      last = true;
    }
    const double hs = dir * step;
    tmp = y_ + hs * a21 * k1_;
    rhs_(t_ + c2 * hs, tmp, k2);
    tmp = y_ + hs * (a31 * k1_ + a32 * k2);
    rhs_(t_ + c3 * hs, tmp, k3);
    tmp = y_ + hs * (a41 * k1_ + a42 * k2 + a43 * k3);
    rhs_(t_ + c4 * hs, tmp, k4);
    tmp = y_ + hs * (a51 * k1_ + a52 * k2 + a53 * k3 + a54 * k4);
    rhs_(t_ + c5 * hs, tmp, k5);
    tmp = y_ + hs * (a61 * k1_ + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs_(t_ + hs, tmp, k6);
    y_new = y_ + hs * (b1 * k1_ + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs_(t_ + hs, y_new, k7);
    err = hs * (e1 * k1_ + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double norm = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double sc = opt_.atol + opt_.rtol * std::max(std::abs(y_[i]), std::abs(y_new[i]));
      double r = err[i] / sc;
      norm += r * r;
    }
    norm = std::sqrt(norm / static_cast<double>(n));
    if (!std::isfinite(norm)) throw NumericalError("integrator produced a non-finite state");

    bool accept = norm <= 1.0;
    if (accept && opt_.invariant) {
      double drift = std::abs(opt_.invariant(y_new) - opt_.invariant(y_));
      double scale = opt_.invariant_scale ? opt_.invariant_scale(y_new) : 1.0;
      if (drift > (opt_.invariant_rate * step + opt_.invariant_floor) * scale) {
        accept = false;
        norm = std::max(norm, 2.0);
      }
    }
    double factor = norm == 0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
    if (accept) {
      t_ = last ? t_target : t_ + hs;
      y_ = y_new;
      k1_ = k7;
      ++accepted_;
      if (!last) h = std::min(step * factor, opt_.max_step);
    } else {
      ++rejected_;
      h = step * std::min(factor, 0.9);
      double floor = 1e-14 * std::max(1.0, std::abs(t_));
      if (h < floor) {
        std::ostringstream os;
        os << "step size underflow at t = " << t_;
        throw NumericalError(os.str());
      }
    }
  }
  h_ = h;
}

}  // namespace nilcurve
