#include "frontlab/selfmap.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "frontlab/error.hpp"
#include "frontlab/numdiff.hpp"
#include "frontlab/parallel.hpp"

namespace frontlab {

ModelParams map_params_unchecked(const ModelParams& source, double n2) {
  if (n2 == source.n) return source;
  const double r = n2 / source.n;
  ModelParams t = source;
  t.n = n2;
  t.p = (source.p + 1.0) * r - 1.0;
  t.q = (source.q + 1.0) * r - 1.0;
  t.k = source.k * std::sqrt(source.n / n2);
  t.reference_range = n2 < 2.0;
  return t;
}

SelfMapPair map_params(const ModelParams& source, double n2) {
  if (!std::isfinite(n2)) throw Error(ErrorCode::NonFinite, "n2 must be finite");
  if (n2 < 1.0) throw Error(ErrorCode::TargetOutOfRange, "target n2 < 1");
  const ModelParams t = map_params_unchecked(source, n2);
  if (t.q < 1.0) {
    throw Error(ErrorCode::TargetOutOfRange,
                "target q2 = " + std::to_string(t.q) + " < 1 (need n2/n1 >= 2/(q1+1))");
  }
  return {source, validate_params(t.n, t.p, t.q, t.k), n2};
}

std::pair<double, double> transform_point(const ModelParams& source, PhasePoint pt) {
  if (!(pt.X > 0.0)) throw Error(ErrorCode::OriginUndefined, "transform undefined at X <= 0");
  const double d = std::sqrt(2.0 / (source.q + 1.0));
  const double U = std::pow(pt.X, source.p - source.q);
  const double W = pt.Y * std::pow(pt.X, -(1.0 + source.q) / 2.0) / d;
  return {U, W};
}

TransformedCoefficients transformed_coefficients(const ModelParams& params) {
  TransformedCoefficients c;
  c.a_u = 2.0 * (params.p - params.q) / (params.q + 1.0);
  c.a_w = params.kn() * std::sqrt(2.0) / std::sqrt(params.q + 1.0);
  c.e = (2.0 * params.n - 1.0 - params.q) / (2.0 * (params.p - params.q));
  return c;
}

double transformed_residual_with(const ModelParams& source, const Trajectory& traj,
                                 const TransformedCoefficients& co) {
  if (traj.c != 0.0) throw Error(ErrorCode::NotCZero, "trajectory was not shot at c = 0");
  // Monotone rising arc only.
  std::vector<TrajectoryPoint> pts;
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    const auto& p = traj.points[i];
    if (p.Y <= 0.0 || (i > 0 && p.X <= traj.points[i - 1].X) || p.X >= 1.0) break;
    if (p.X >= 0.05 && p.X <= 0.95) pts.push_back(p);
  }
  if (pts.size() < 10) throw Error(ErrorCode::TooFewSamples, "too few trajectory samples in X in [0.05, 0.95]");

  const double d = std::sqrt(2.0 / (source.q + 1.0));
  const double a = (source.q - 1.0) / 2.0;
  auto g = [&](const TrajectoryPoint& p) { return std::pow(p.X, a) / d; };
  auto dg = [&](const TrajectoryPoint& p) { return a * std::pow(p.X, a - 1.0) * p.Y / d; };

  // eta1 by trapezoid with endpoint derivative correction.
  const std::size_t m = pts.size();
  std::vector<double> eta(m), U(m), W(m);
  eta[0] = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    const double h = pts[i].xi - pts[i - 1].xi;
    eta[i] = eta[i - 1] + 0.5 * h * (g(pts[i - 1]) + g(pts[i])) +
             h * h / 12.0 * (dg(pts[i - 1]) - dg(pts[i]));
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::tie(U[i], W[i]) = transform_point(source, {pts[i].X, pts[i].Y});
  }
  const auto dU = derivative(eta, U, 1);
  const auto dW = derivative(eta, W, 1);
  double res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double ru = dU[i] - co.a_u * U[i] * W[i];
    const double rw = dW[i] - (-co.a_w * std::pow(U[i], co.e) * W[i] - U[i] + 1.0 - W[i] * W[i]);
    res = std::max({res, std::abs(ru), std::abs(rw)});
  }
  return res;
}

double transformed_residual(const ModelParams& source, const Trajectory& traj, double n2) {
  if (traj.c != 0.0) throw Error(ErrorCode::NotCZero, "trajectory was not shot at c = 0");
  return transformed_residual_with(source, traj, transformed_coefficients(map_params_unchecked(source, n2)));
}

InvarianceReport kstar_invariance(double n1, double p1, double q1, double n2, const BisectionOptions& opts) {
  InvarianceReport rep;
  rep.pair = map_params(validate_params(n1, p1, q1, 1.0), n2);
  const ModelParams t = rep.pair.target;
  auto [a, b] = run_pair([&] { return kstar(n1, p1, q1, opts); },
                         [&] { return kstar(t.n, t.p, t.q, opts); });
  rep.source_kstar = a;
  rep.target_kstar = b;
  rep.discrepancy = n2 == n1 ? 0.0 : std::abs(b.value * std::sqrt(n2) - a.value * std::sqrt(n1));
  return rep;
}

}  // namespace frontlab
