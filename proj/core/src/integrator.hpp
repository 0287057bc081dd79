#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>

#include <boost/numeric/odeint.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>

#include "frontlab/error.hpp"

namespace frontlab::detail {

using State2 = std::array<double, 2>;
using Rhs = std::function<void(const State2&, State2&, double)>;
/// Jacobian of Rhs as row-major {d0/dx0, d0/dx1, d1/dx0, d1/dx1}.
using Jac = std::function<void(const State2&, std::array<double, 4>&)>;

/// Bisection on the dense output of the last step of `st` for a sign change
/// of g between st.t0() and st.t1().
template <class Stepper, class G>
double locate_root(const Stepper& st, G g, double tol) {
  double a = st.t0();
  double b = st.t1();
  double ga = g(st.x0());
  for (int i = 0; i < 200 && std::abs(b - a) > tol * std::max(1.0, std::abs(b)); ++i) {
    const double m = 0.5 * (a + b);
    const double gm = g(st.at(m));
    if ((gm > 0.0) == (ga > 0.0) && gm != 0.0) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  return b;
}

inline void check_step(double h, double t, const State2& x) {
  if (!(std::abs(h) > 1e-15 * std::max(1.0, std::abs(t)))) {
    throw Error(ErrorCode::IntegrationFailure, "step size underflow at t = " + std::to_string(t));
  }
  if (!std::isfinite(x[0]) || !std::isfinite(x[1])) {
    throw Error(ErrorCode::IntegrationFailure, "non-finite state at t = " + std::to_string(t));
  }
}

/// Thin wrapper over odeint's dense-output Dormand-Prince 5(4) stepper.
class DenseStepper {
 public:
  DenseStepper(Rhs rhs, double atol, double rtol) : rhs_(std::move(rhs)), rtol_(rtol) {
    make(atol);
  }

  void initialize(const State2& x, double t, double dt) {
    stepper_.initialize(x, t, dt);
  }

  /// Restarts from the current point with a new absolute tolerance.
  void retune(double atol) {
    const State2 x = stepper_.current_state();
    const double t = stepper_.current_time();
    const double dt = stepper_.current_time_step();
    make(atol);
    stepper_.initialize(x, t, dt);
  }

  void step() {
    try {
      stepper_.do_step(std::ref(rhs_));
    } catch (const boost::numeric::odeint::step_adjustment_error& e) {
      throw Error(ErrorCode::IntegrationFailure, std::string("step size adjustment failed: ") + e.what());
    }
    check_step(stepper_.current_time_step(), stepper_.current_time(), stepper_.current_state());
  }

  double t0() const { return stepper_.previous_time(); }
  double t1() const { return stepper_.current_time(); }
  const State2& x0() const { return stepper_.previous_state(); }
  const State2& x1() const { return stepper_.current_state(); }

  State2 at(double t) const {
    State2 x{};
    stepper_.calc_state(t, x);
    return x;
  }

  /// Root of g(x(t)) within the last step, assuming a sign change between
  /// t0() and t1().
  template <class G>
  double locate(G g, double tol = 1e-12) const {
    return locate_root(*this, g, tol);
  }

 private:
  using Base = boost::numeric::odeint::runge_kutta_dopri5<State2>;
  using Dense = boost::numeric::odeint::result_of::make_dense_output<Base>::type;

  void make(double atol) {
    stepper_ = boost::numeric::odeint::make_dense_output(atol, rtol_, Base());
  }

  Rhs rhs_;
  double rtol_;
  Dense stepper_{boost::numeric::odeint::make_dense_output(1e-12, 1e-10, Base())};
};

/// Variable-order BDF (GSL msbdf) for stiff stretches such as slow center
/// manifolds. Between steps the state is a cubic Hermite interpolant.
class StiffStepper {
 public:
  StiffStepper(Rhs rhs, Jac jac, double atol, double rtol) : rhs_(std::move(rhs)), jac_(std::move(jac)) {
    sys_ = {&StiffStepper::eval, &StiffStepper::eval_jac, 2, this};
    driver_ = gsl_odeiv2_driver_alloc_y_new(&sys_, gsl_odeiv2_step_msbdf, 1e-6, atol, rtol);
    gsl_set_error_handler_off();
  }
  StiffStepper(const StiffStepper&) = delete;
  StiffStepper& operator=(const StiffStepper&) = delete;
  ~StiffStepper() { gsl_odeiv2_driver_free(driver_); }

  void initialize(const State2& x, double t, double dt) {
    x1_ = x;
    t1_ = t;
    h_ = dt;
    rhs_(x1_, f1_, t1_);
    x0_ = x1_;
    f0_ = f1_;
    t0_ = t1_;
  }

  void step() {
    x0_ = x1_;
    f0_ = f1_;
    t0_ = t1_;
    double y[2] = {x1_[0], x1_[1]};
    double t = t1_;
    const double horizon = t + 1e30;
    const int status = gsl_odeiv2_evolve_apply(driver_->e, driver_->c, driver_->s, &sys_, &t, horizon, &h_, y);
    if (status != GSL_SUCCESS) {
      throw Error(ErrorCode::IntegrationFailure, std::string("stiff step failed: ") + gsl_strerror(status));
    }
    x1_ = {y[0], y[1]};
    t1_ = t;
    rhs_(x1_, f1_, t1_);
    check_step(t1_ - t0_, t1_, x1_);
  }

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  const State2& x0() const { return x0_; }
  const State2& x1() const { return x1_; }

  State2 at(double t) const {
    const double h = t1_ - t0_;
    const double s = (t - t0_) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double a0 = 2 * s3 - 3 * s2 + 1;
    const double b0 = (s3 - 2 * s2 + s) * h;
    const double a1 = -2 * s3 + 3 * s2;
    const double b1 = (s3 - s2) * h;
    return {a0 * x0_[0] + b0 * f0_[0] + a1 * x1_[0] + b1 * f1_[0],
            a0 * x0_[1] + b0 * f0_[1] + a1 * x1_[1] + b1 * f1_[1]};
  }

  template <class G>
  double locate(G g, double tol = 1e-12) const {
    return locate_root(*this, g, tol);
  }

 private:
  static int eval(double t, const double y[], double f[], void* self) {
    auto* me = static_cast<StiffStepper*>(self);
    State2 out{};
    me->rhs_(State2{y[0], y[1]}, out, t);
    f[0] = out[0];
    f[1] = out[1];
    return (std::isfinite(out[0]) && std::isfinite(out[1])) ? GSL_SUCCESS : GSL_EBADFUNC;
  }

  static int eval_jac(double t, const double y[], double* dfdy, double dfdt[], void* self) {
    auto* me = static_cast<StiffStepper*>(self);
    std::array<double, 4> j{};
    me->jac_(State2{y[0], y[1]}, j);
    for (int i = 0; i < 4; ++i) dfdy[i] = j[static_cast<std::size_t>(i)];
    dfdt[0] = 0.0;
    dfdt[1] = 0.0;
    (void)t;
    return GSL_SUCCESS;
  }

  Rhs rhs_;
  Jac jac_;
  gsl_odeiv2_system sys_{};
  gsl_odeiv2_driver* driver_ = nullptr;
  State2 x0_{}, x1_{}, f0_{}, f1_{};
  double t0_ = 0.0, t1_ = 0.0, h_ = 1e-6;
};

}  // namespace frontlab::detail
