#pragma once

#include <utility>

#include "frontlab/critical.hpp"
#include "frontlab/model.hpp"
#include "frontlab/phaseplane.hpp"

namespace frontlab {

/// Parameter sets whose c = 0 phase planes are topologically equivalent:
/// p2 = (p1+1) n2/n1 - 1, q2 = (q1+1) n2/n1 - 1, k2 = k1 sqrt(n1/n2).
struct SelfMapPair {
  ModelParams source;
  ModelParams target;
  double n2 = 0.0;
};

/// Throws TargetOutOfRange if the target leaves n >= 1, p > q >= 1.
SelfMapPair map_params(const ModelParams& source, double n2);

/// The map without range checks (targets with q < 1 still define a valid
/// transformed system).
ModelParams map_params_unchecked(const ModelParams& source, double n2);

/// (U, W) = (X^{p-q}, Y X^{-(1+q)/2} / d), d = sqrt(2/(q+1)).
std::pair<double, double> transform_point(const ModelParams& source, PhasePoint pt);

/// Coefficients of the transformed c = 0 system in (U, W), with
/// d eta1/d xi = X^{(q-1)/2} / d:
///   U' = a_u U W,   W' = -a_w U^e W - U + 1 - W^2.
struct TransformedCoefficients {
  double a_u = 0.0;  // 2 (p-q)/(q+1)
  double a_w = 0.0;  // k n sqrt(2)/sqrt(q+1)
  double e = 0.0;    // (2n-1-q) / (2 (p-q))
};

TransformedCoefficients transformed_coefficients(const ModelParams& params);

/// Maps a c = 0 trajectory of `source` to (eta1, U, W), differentiates
/// numerically and returns the sup residual of the transformed system
/// (X in [0.05, 0.95]) under the coefficients of the mapped parameter set.
/// Throws NotCZero if traj.c != 0.
double transformed_residual(const ModelParams& source, const Trajectory& traj, double n2);

/// Same, with explicit coefficients (negative controls, direct checks).
double transformed_residual_with(const ModelParams& source, const Trajectory& traj,
                                 const TransformedCoefficients& coeffs);

struct InvarianceReport {
  SelfMapPair pair;
  CriticalResult source_kstar;
  CriticalResult target_kstar;
  /// |k*_2 sqrt(n2) - k*_1 sqrt(n1)|
  double discrepancy = 0.0;
};

/// Bisects k* on both sides of the map and compares k* sqrt(n).
InvarianceReport kstar_invariance(double n1, double p1, double q1, double n2,
                                  const BisectionOptions& opts = {});

}  // namespace frontlab
