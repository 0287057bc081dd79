#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "frontlab/model.hpp"
#include "frontlab/phaseplane.hpp"

namespace frontlab {

/// Uniform nodes x_i = -L + i dx, i = 0..N, N dx = 2L.
struct Grid {
  double L = 0.0;
  double dx = 0.0;
  std::size_t N = 0;

  double x(std::size_t i) const { return -L + static_cast<double>(i) * dx; }
  std::size_t size() const { return N + 1; }
};

/// Throws InvalidArgument unless dx > 0 and round(2L/dx) >= 100.
Grid make_grid(double L, double dx);

struct Field {
  double t = 0.0;
  std::vector<double> u;
};

enum class IcKind { Heaviside, AntiHeaviside, TailGeneral };
std::string_view to_string(IcKind kind) noexcept;
IcKind parse_ic(std::string_view name);

/// Tail bounds for general monotone data:
///   u0 <= A(x) for x < R_minus, u0 >= 1 - C_plus exp(lambda_minus(cbar) x) for x > R_plus,
/// with A(x) = C_minus exp(left_rate x) if cbar > 0 and
/// A(x) = (|cbar|/(q-1))^{1/(q-1)} |x|^{-1/(q-1)} if cbar < 0.
struct TailParams {
  double C_minus = 1.0;
  double C_plus = 1.0;
  double R_minus = -5.0;
  double R_plus = 5.0;
  double cbar = 0.0;
  double left_rate = 0.0;
  double right_rate = 0.0;   // lambda_-(cbar)
  double q = 1.0;
  /// false when (q, cbar) lies outside the hypotheses of the general-data
  /// convergence result (q = 1).
  bool covered = true;

  double left_bound(double x) const;
  double right_bound(double x) const;
};

/// Fills in the rates from cbar. Throws InvalidTailParams for cbar = 0,
/// nonpositive constants, R_minus >= R_plus, or R_minus >= 0 when cbar < 0.
TailParams make_tail_params(const ModelParams& params, double cbar, double C_minus, double C_plus,
                            double R_minus, double R_plus);

Field initial_condition(IcKind kind, const Grid& grid, const std::optional<TailParams>& tail = std::nullopt);

/// Samples fn at the nodes.
Field sample_field(const Grid& grid, const std::function<double(double)>& fn, double t = 0.0);

/// Largest stable step: min(dx^2/2, dx/(kn)).
double cfl_bound(const ModelParams& params, double dx);

/// One SSP-RK2 step of the central-difference semi-discretization; the end
/// nodes are held fixed.
Field step(const ModelParams& params, const Field& f, double dt, const Grid& grid);

struct TracePoint {
  double t = 0.0;
  double x_front = 0.0;
};

struct FrontTrace {
  std::vector<TracePoint> samples;
  double fitted_speed = std::numeric_limits<double>::quiet_NaN();
  double fit_t0 = std::numeric_limits<double>::quiet_NaN();
  double fit_t1 = std::numeric_limits<double>::quiet_NaN();
  double fit_residual = std::numeric_limits<double>::quiet_NaN();
};

struct SimulationOptions {
  /// Requested half-width; enlarged to |predicted speed| T + 20 if smaller.
  double L = 0.0;
  double dx = 0.05;
  double safety = 0.4;
  double snapshot_every = 0.25;
  bool keep_snapshots = true;
  std::optional<TailParams> tail;
  /// Speed used to size the domain; computed (cbar or kn + 2 sqrt(p-q)) if unset.
  std::optional<double> predicted_speed;
  double window_fraction = 1.0 / 3.0;
};

struct Simulation {
  ModelParams params;
  IcKind ic = IcKind::Heaviside;
  double T = 0.0;
  Grid grid;
  double dt = 0.0;
  std::vector<Field> snapshots;
  Field final_field;
  FrontTrace trace;
};

Simulation simulate(const ModelParams& params, IcKind ic, double T, const SimulationOptions& opts = {});

/// Linear interpolation of the first crossing of `level`. Throws NoCrossing
/// unless level lies strictly between min and max of u.
double front_position(const Field& f, const Grid& grid, double level = 0.5);

/// Least-squares slope of x_front over the final window_fraction of the
/// time range. Fills the fit fields of `trace`. Throws TooFewSamples below 10.
double fit_speed(FrontTrace& trace, double window_fraction = 1.0 / 3.0);

/// Sup |u - f(x - shift)| with the shift aligning half levels, over nodes
/// inside the profile table.
double shape_error(const Field& f, const Grid& grid, const ProfileTable& profile);

/// Value of u at x by linear interpolation.
double value_at(const Field& f, const Grid& grid, double x);

enum class WaveKind { Subsolution, Supersolution };
enum class Truncation { ZeroLeft, OneRight };

/// U(x, t) = F(x + c t - R), where F vanishes on (-inf, 0] (ZeroLeft) or
/// equals 1 on [0, inf) (OneRight).
struct TruncatedWave {
  WaveKind kind = WaveKind::Subsolution;
  Truncation truncation = Truncation::ZeroLeft;
  double c = 0.0;
  double R = 0.0;
  /// F on its nontrivial side, increasing xi.
  std::vector<ProfileSample> profile;
  /// OneRight: exponential continuation rate below the first sample.
  double tail_rate = 0.0;

  double shape(double s) const;
  double value(double x, double t) const { return shape(x + c * t - R); }
};

TruncatedWave build_subsolution(const ModelParams& params, double c, double R);
TruncatedWave build_supersolution(const ModelParams& params, double c, double R);

/// True iff the ordering holds at every snapshot and node within 1e-6.
/// Throws InitialOrderViolated if it fails on the first snapshot.
bool comparison_check(const Simulation& sim, const TruncatedWave& wave);

}  // namespace frontlab
