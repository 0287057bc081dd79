#pragma once

#include <optional>
#include <utility>

#include "frontlab/model.hpp"
#include "frontlab/phaseplane.hpp"

namespace frontlab {

/// A root located by bisection on a qualitative shoot outcome.
struct CriticalResult {
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double tol = 0.0;
  int evaluations = 0;
  std::pair<ConnectionClass, ConnectionClass> endpoint_classes{ConnectionClass::Undetermined,
                                                               ConnectionClass::Undetermined};
  /// Set when the value comes from a closed form rather than from bisection.
  /// The bracket then collapses to the value; endpoint_classes hold the
  /// outcomes of the verification shots at value (1 -/+ 1e-3).
  bool closed_form = false;
};

struct BisectionOptions {
  double tol = 1e-8;
  int max_evaluations = 80;
  /// Factor and count for widening a k* bracket endpoint of the wrong class.
  double widen_factor = 1.5;
  int max_widenings = 10;
  /// Offset below kn - 2 sqrt(p - q) at which the c-bar upper endpoint is
  /// shot (the endpoint itself is a degenerate node).
  double upper_offset = 1e-6;
  ShootOptions shoot{.critical_band = 0.0, .sample_dxi = 0.0};
};

/// Critical velocity: sup of c with a direct connection, bisected on
/// [-2 sqrt(p - q), kn - 2 sqrt(p - q)].
CriticalResult cbar(const ModelParams& params, const BisectionOptions& opts = {});

/// Transition coefficient k*(n, p, q): the k at which cbar changes sign,
/// bisected on the c = 0 outcome over [2 sqrt(p - q)/n, max(1, p/n)].
CriticalResult kstar(double n, double p, double q, const BisectionOptions& opts = {});

/// Closed-form critical velocity where one is known, otherwise empty.
std::optional<double> cbar_explicit(const ModelParams& params);

}  // namespace frontlab
