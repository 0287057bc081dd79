#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "frontlab/model.hpp"

namespace frontlab {

/// (X, Y) = (f, f') for a profile f(xi) of u(x, t) = f(x + c t).
struct PhasePoint {
  double X = 0.0;
  double Y = 0.0;
};

/// Right-hand side (X', Y') = (Y, cY - k n X^{n-1} Y - X^p + X^q).
std::pair<double, double> vector_field(const ModelParams& params, double c, PhasePoint pt);

/// First-order point on the unique trajectory leaving P1 = (0, 0) into X, Y > 0.
/// Requires 0 < delta <= 1e-3.
PhasePoint launch_state(const ModelParams& params, double c, double delta);

enum class ConnectionClass {
  DirectLeading,   // reaches P2 with Y > 0 throughout, tangent to e_plus
  DirectCritical,  // reaches P2 with Y > 0 throughout, tangent to e_minus
  Overshoot,       // first hits Y = 0 at some X0 > 1
  Undetermined,    // capped before any of the above
};

std::string_view to_string(ConnectionClass cls) noexcept;

inline bool is_direct(ConnectionClass cls) noexcept {
  return cls == ConnectionClass::DirectLeading || cls == ConnectionClass::DirectCritical;
}

enum class EventKind { CrossedX1, HitXAxis, NearP2, CrossedYAxis, Capped };

std::string_view to_string(EventKind kind) noexcept;

struct TrajectoryPoint {
  double xi = 0.0;
  double X = 0.0;
  double Y = 0.0;
};

struct TrajectoryEvent {
  EventKind kind = EventKind::Capped;
  double xi = 0.0;
  double X = 0.0;
  double Y = 0.0;
};

/// A sample of the approach to P2: distance r = |(X - 1, Y)| and slope Y / (X - 1).
struct ApproachSample {
  double radius = 0.0;
  double slope = 0.0;
};

struct ShootOptions {
  double delta = 1e-6;
  double rtol = 1e-10;
  double atol = 1e-12;
  double eps_p2 = 1e-8;
  double x_max = 10.0;
  double arc_length_cap = 1e4;
  /// Launch offsets tried, in order, after an Undetermined outcome.
  std::vector<double> retry_deltas{1e-7, 1e-8};
  /// |lambda_plus - lambda_minus| below which P2 is treated as a degenerate node.
  double degeneracy_gap = 1e-4;
  /// An orbit whose leading-eigenvector component at the P2 ball is within
  /// this fraction of the non-leading one is taken as the critical orbit
  /// (integration noise decides the sign of a smaller component).
  double critical_band = 5e-3;
  /// Dense-output sampling interval in xi; 0 keeps only events and endpoints.
  double sample_dxi = 0.02;
  /// Radii at which the approach slope to P2 is recorded.
  std::vector<double> approach_radii{2e-4, 1e-4};
  long max_steps = 2'000'000;
};

struct Trajectory {
  ModelParams params;
  double c = 0.0;
  double delta = 0.0;
  std::vector<TrajectoryPoint> points;
  std::vector<TrajectoryEvent> events;
  ConnectionClass connection = ConnectionClass::Undetermined;
  /// First X-axis crossing abscissa for Overshoot.
  std::optional<double> x0_crossing;
  /// x0_crossing - 1, kept separately so tiny overshoots stay resolvable.
  std::optional<double> x0_excess;
  /// Xi at which X = 1/2 (profile anchor).
  std::optional<double> xi_half;
  /// Y / (X - 1) on entering the eps_p2 ball around P2.
  std::optional<double> terminal_slope;
  /// Coefficient ratio a_plus / a_minus of the eigen-decomposition of
  /// (X - 1, Y) on entering the eps_p2 ball (real, non-degenerate node only).
  std::optional<double> leading_ratio;
  /// Set when the class was decided inside the degenerate-node band.
  bool degenerate = false;
  /// True if the Overshoot crossing was obtained from the linearization at P2.
  bool crossing_extrapolated = false;
  std::vector<ApproachSample> approach;
  double arc_length = 0.0;
  long steps = 0;

  /// Approach slope at P2 extrapolated to r -> 0 from the two smallest
  /// recorded approach radii (first-order Richardson), if available.
  std::optional<double> extrapolated_approach_slope() const;
};

/// Integrates the traveling-wave system from launch_state until the orbit
/// reaches P2, crosses the X-axis, or hits a cap.
///
/// The P2 decision is made on entering the eps_p2 ball. With (X - 1, Y) =
/// a_+ e_+ + a_- e_- the orbit stays on the X < 1 side iff a_+ <= 0; a
/// positive a_+ means the orbit leaves along e_+ through Y = 0 at X > 1, and
/// that crossing is computed from the linear flow. Leading vs. critical is
/// the nearest of lambda_+/lambda_- to the terminal slope.
///
/// Throws IntegrationFailure on step-size underflow and IntegrityViolation if
/// Y reaches 0 with X < 1 (impossible for the exact flow).
Trajectory shoot(const ModelParams& params, double c, const ShootOptions& opts = {});

/// The branch of the stable manifold of P2 tangent to e_-, entering from
/// X < 1: integrated backward from P2 - rho e_- until it crosses X = 0.
/// Points are returned in increasing xi with xi = 0 at the start point;
/// the X = 0 crossing is logged as CrossedYAxis. HitXAxis or Capped mark a
/// branch that never reaches X = 0. Requires P2 to be a stable node.
Trajectory stable_branch(const ModelParams& params, double c, double rho = 1e-6,
                         const ShootOptions& opts = {});


/// Y(X) along the monotone part (Y > 0) of a trajectory by quintic Hermite
/// interpolation in X. Returns nullopt outside the sampled X range.
std::optional<double> y_at(const Trajectory& traj, double X);

/// Profile f(xi) with f(0) = 1/2 sampled from a direct connection.
struct ProfileSample {
  double xi = 0.0;
  double f = 0.0;
};

struct ProfileTable {
  double c = 0.0;
  std::vector<ProfileSample> samples;

  /// Linear interpolation; clamps to the end values outside the table.
  double value_at(double xi) const;
  /// Xi of the f = 1/2 crossing by linear interpolation of the table.
  double half_level_xi() const;
};

struct ProfileOptions {
  double spacing = 0.01;
  /// Uniform spacing is used on |xi| <= core_half_width; raw trajectory
  /// samples are used beyond it (algebraic tails can be very long).
  double core_half_width = 60.0;
};

/// Rebuilds f(xi) from a direct connection, anchored so that f(0) = 1/2.
/// Throws NotAConnection for Overshoot/Undetermined trajectories.
ProfileTable reconstruct_profile(const Trajectory& traj, const ProfileOptions& opts = {});

/// Signed flux of the vector field across the graph Y = g(X) at X.
/// Positive means the flow points into the region between the curve and the
/// X-axis. `curve_slope` is g'(X).
double flow_sign_across(const ModelParams& params, double c, double curve_value,
                        double curve_slope, double X);

}  // namespace frontlab
