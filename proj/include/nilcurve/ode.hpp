#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>

namespace nilcurve {

using OdeRhs = std::function<void(double, const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct OdeOptions {
  double rtol = 1e-12;
  double atol = 1e-14;
  double initial_step = 1e-3;
  double max_step = 0.5;
  std::size_t max_steps = 5'000'000;
  // Optional conserved quantity; a step is rejected when it changes by more
  // than (invariant_rate * |h| + invariant_floor) * invariant_scale(y).
  std::function<double(const Eigen::VectorXd&)> invariant;
  std::function<double(const Eigen::VectorXd&)> invariant_scale;
  double invariant_rate = 1e-12;
  double invariant_floor = 1e-15;
};

// Dormand–Prince 5(4) with FSAL and standard PI-free step control.
class Dopri5 {
 public:
  Dopri5(OdeRhs rhs, OdeOptions options);

  void reset(double t, const Eigen::VectorXd& y);
  // Integrates to t_target (either direction), landing on it exactly.
  void advance_to(double t_target);

  double t() const { return t_; }
  const Eigen::VectorXd& y() const { return y_; }
  // Replace the state in place (e.g. after renormalizing a linear block).
  void set_state(const Eigen::VectorXd& y);

  std::size_t accepted_steps() const { return accepted_; }
  std::size_t rejected_steps() const { return rejected_; }

 private:
  OdeRhs rhs_;
  OdeOptions opt_;
  double t_ = 0;
  double h_ = 0;
  Eigen::VectorXd y_, k1_;
  bool have_k1_ = false;
  std::size_t accepted_ = 0;
  std::size_t rejected_ = 0;
};

}  // namespace nilcurve
