#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "frontlab/model.hpp"

namespace frontlab::catalog {

enum class CaseKind { Trajectory, InvariantCurveInward, InvariantCurveOutward };

std::string_view to_string(CaseKind kind) noexcept;

/// Closed-form profile f(xi) = (1 + C e^{-a xi})^{-m}.
struct WaveForm {
  double C = 1.0;
  double rate = 1.0;
  double exponent = 1.0;

  double value(double xi) const;
  double first(double xi) const;
  double second(double xi) const;
};

/// A closed-form curve Y = g(X) on [0, 1] of the traveling-wave phase plane.
struct ExplicitCase {
  std::string id;
  ModelParams params;
  double c = 0.0;
  CaseKind kind = CaseKind::Trajectory;
  std::function<double(double)> curve;
  std::function<double(double)> slope;
  /// Whether the curve is the critical trajectory (Trajectory kind) or the
  /// stated parameter condition holds (invariant curves).
  bool valid = false;
  std::string validity;
  std::optional<WaveForm> wave;
  /// Sign function whose sign gives the flow direction across the curve
  /// (invariant curves only).
  std::function<double(double)> sign_function;
};

ExplicitCase basic(double n);
ExplicitCase basic_inward(double n, double q, double k);
ExplicitCase curve0(double n, double k);
ExplicitCase expl2(double n, double k, int branch);
ExplicitCase curve1(double n);
ExplicitCase curve3_estimate3(double n, double q);
ExplicitCase curve3_estimate4(double n, double q);
ExplicitCase complex_curve(double n, double p, double q, double A);
ExplicitCase eps_curve(double n, double q);

/// The default instance of every catalogued case.
std::vector<ExplicitCase> list_cases();

/// Looks up a default case by id (case-insensitive); throws InvalidArgument.
ExplicitCase find_case(const std::string& id);

/// sup over X in [0.05, 0.95] of |Y Y' - (cY - k n X^{n-1} Y - X^p + X^q)|.
double residual_trajectory(const ExplicitCase& ec, int n_samples = 100);

/// sup over xi in [-20, 20] of the closed-form wave residual in the profile ODE.
double residual_wave(const ExplicitCase& ec, int n_samples = 400);

/// Residual of an arbitrary wave form under the case's parameters.
double residual_wave(const ExplicitCase& ec, const WaveForm& wave, int n_samples = 400);

/// sup over X in [0.05, 0.95] of |Y_shot(X) - curve(X)| for a trajectory
/// shot at the case's (params, c); infinity if the shot orbit does not span
/// the interval monotonically.
double shoot_deviation(const ExplicitCase& ec, int n_samples = 100);

/// Sign function >= 0 (inward) or <= 0 (outward) on a grid of [0, 1].
bool sign_check(const ExplicitCase& ec, int n_samples = 1000);

}  // namespace frontlab::catalog
