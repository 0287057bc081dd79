#include "frontlab/phaseplane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "frontlab/error.hpp"
#include "integrator.hpp"

namespace frontlab {

using detail::DenseStepper;
using detail::StiffStepper;
using detail::State2;

std::string_view to_string(ConnectionClass cls) noexcept {
  switch (cls) {
    case ConnectionClass::DirectLeading: return "DirectLeading";
    case ConnectionClass::DirectCritical: return "DirectCritical";
    case ConnectionClass::Overshoot: return "Overshoot";
    case ConnectionClass::Undetermined: return "Undetermined";
  }
  return "?";
}

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::CrossedX1: return "CrossedX1";
    case EventKind::HitXAxis: return "HitXAxis";
    case EventKind::NearP2: return "NearP2";
    case EventKind::CrossedYAxis: return "CrossedYAxis";
    case EventKind::Capped: return "Capped";
  }
  return "?";
}

std::pair<double, double> vector_field(const ModelParams& pr, double c, PhasePoint pt) {
  const double X = pt.X;
  const double Y = pt.Y;
  const double conv = pr.kn() * power(X, pr.n - 1.0) * Y;
  return {Y, c * Y - conv - power(X, pr.p) + power(X, pr.q)};
}

PhasePoint launch_state(const ModelParams& pr, double c, double delta) {
  if (!(delta > 0.0 && delta <= 1e-3)) {
    throw Error(ErrorCode::DeltaOutOfRange, "delta must lie in (0, 1e-3], got " + std::to_string(delta));
  }
  const double n = pr.n;
  const double q = pr.q;
  if (q == 1.0) {
    const double lambda1 = 0.5 * (c + std::sqrt(c * c + 4.0));
    return {delta, lambda1 * delta};
  }
  if (c > 0.0) return {delta, c * delta};
  if (c < 0.0) return {delta, std::pow(delta, q) / std::abs(c)};
  const double half = 0.5 * (q + 1.0);
  if (n > half) return {delta, std::sqrt(2.0 / (q + 1.0)) * std::pow(delta, half)};
  if (n == half) {
    const double kn = pr.kn();
    const double v1 = (std::sqrt(kn * kn + 4.0 * n) - kn) / (2.0 * n);
    return {delta, v1 * std::pow(delta, n)};
  }
  return {delta, std::pow(delta, q + 1.0 - n) / pr.kn()};
}

std::optional<double> Trajectory::extrapolated_approach_slope() const {
  if (approach.size() < 2) return std::nullopt;
  // the two smallest radii, r_small < r_big
  std::vector<ApproachSample> a = approach;
  std::sort(a.begin(), a.end(), [](const auto& l, const auto& r) { return l.radius < r.radius; });
  const double r1 = a[0].radius;
  const double r2 = a[1].radius;
  const double s1 = a[0].slope;
  const double s2 = a[1].slope;
  return s1 + (s1 - s2) * r1 / (r2 - r1);
}

namespace {

double dist(const State2& a, const State2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

/// Records trajectory samples: every `dxi` in xi, but only once the phase
/// point has moved by 1e-3 of its distance to the nearest equilibrium.
class Sampler {
 public:
  Sampler(std::vector<TrajectoryPoint>& out, double dxi) : out_(out), dxi_(dxi) {}

  void push(double xi, double X, double Y) {
    out_.push_back({xi, X, Y});
  }

  template <class Stepper, class ToXY>
  void step(const Stepper& st, ToXY to_xy, double t_end) {
    if (dxi_ <= 0.0 || out_.empty()) return;
    const double t0 = st.t0();
    const double h = t_end - t0;
    if (!(std::abs(h) > 0.0)) return;
    const State2 a = to_xy(st.x0());
    const State2 b = to_xy(st.at(t_end));
    const double thr_ref = threshold(b);
    const double disp = dist(a, b);
    const double m_real = std::min(std::abs(h) / dxi_, thr_ref > 0.0 ? disp / thr_ref : 1.0);
    const int m = static_cast<int>(std::clamp(std::ceil(m_real), 1.0, 20000.0));
    for (int j = 1; j <= m; ++j) {
      const double t = (j == m) ? t_end : t0 + h * j / m;
      const State2 x = (j == m) ? b : to_xy(st.at(t));
      const TrajectoryPoint& last = out_.back();
      const State2 lx{last.X, last.Y};
      if (dist(lx, x) >= threshold(x) && t > last.xi) push(t, x[0], x[1]);
    }
  }

 private:
  static double threshold(const State2& x) {
    const double d1 = std::hypot(x[0], x[1]);
    const double d2 = std::hypot(x[0] - 1.0, x[1]);
    return 1e-3 * std::min(d1, d2);
  }

  std::vector<TrajectoryPoint>& out_;
  double dxi_;
};

/// Z-excess at the first Y = 0 crossing of the linear flow at P2 started
/// from (Z, Y). Empty if the linear orbit does not cross forward in time.
std::optional<double> linear_crossing_excess(const EigenData& e, double Z, double Y) {
  if (e.is_real()) {
    const double lp = e.lambda_plus;
    const double lm = e.lambda_minus;
    const double gap = lp - lm;
    if (!(gap > 0.0)) return std::nullopt;
    const double ap = (Y - lm * Z) / gap;
    const double am = Z - ap;
    const double num = -am * lm;
    const double den = ap * lp;
    if (den == 0.0 || num / den <= 0.0) return std::nullopt;
    const double tau = std::log(num / den) / gap;
    if (!(tau >= 0.0)) return std::nullopt;
    // Z(tau) = a_- e^{lm tau} (1 - lm / lp), evaluated in logs to avoid underflow
    const double factor = 1.0 - lm / lp;
    const double mag = std::log(std::abs(am)) + lm * tau + std::log(std::abs(factor));
    const double sign = (am * factor) < 0.0 ? -1.0 : 1.0;
    return sign * std::exp(mag);
  }
  const double alpha = e.lambda_plus;
  const double beta = e.imag_part;
  if (!(beta > 0.0)) return std::nullopt;
  const double D = (alpha * Y - (alpha * alpha + beta * beta) * Z) / beta;
  double theta = std::atan2(Y, -D);
  if (theta <= 0.0) theta += M_PI;
  const double tau = theta / beta;
  return std::exp(alpha * tau) * (Z * std::cos(theta) + (Y - alpha * Z) / beta * std::sin(theta));
}

void set_overshoot(Trajectory& tr, double excess, bool extrapolated) {
  const double ex = std::max(excess, std::numeric_limits<double>::denorm_min());
  tr.connection = ConnectionClass::Overshoot;
  tr.x0_excess = ex;
  tr.x0_crossing = std::max(1.0 + ex, std::nextafter(1.0, 2.0));
  tr.crossing_extrapolated = extrapolated;
}

void classify_at_p2(Trajectory& tr, double Z, double Y, const ShootOptions& opts) {
  const EigenData e = p2_eigen(tr.params, tr.c);
  tr.terminal_slope = Y / Z;
  const double r = std::hypot(Z, Y);
  if (Z >= 0.0) {
    const auto ex = linear_crossing_excess(e, Z, Y);
    set_overshoot(tr, ex && *ex > 0.0 ? *ex : std::max(Z, r), true);
    return;
  }
  if (e.gap() < opts.degeneracy_gap) {
    tr.connection = ConnectionClass::DirectCritical;
    tr.degenerate = true;
    return;
  }
  if (!e.is_real()) {
    const auto ex = linear_crossing_excess(e, Z, Y);
    set_overshoot(tr, ex ? *ex : r, true);
    return;
  }
  const double gap = e.lambda_plus - e.lambda_minus;
  const double ap = (Y - e.lambda_minus * Z) / gap;
  const double am = Z - ap;
  tr.leading_ratio = am != 0.0 ? ap / am : std::numeric_limits<double>::infinity();
  if (ap > 0.0 && ap > opts.critical_band * std::abs(am)) {
    const auto ex = linear_crossing_excess(e, Z, Y);
    set_overshoot(tr, ex ? *ex : r, true);
    return;
  }
  if (ap > 0.0) {
    tr.connection = ConnectionClass::DirectCritical;
    return;
  }
  const double slope = Y / Z;
  const double mid = 0.5 * (e.lambda_plus + e.lambda_minus);
  tr.connection = (slope > mid) ? ConnectionClass::DirectLeading : ConnectionClass::DirectCritical;
}

void add_event(Trajectory& tr, EventKind kind, double xi, double X, double Y) {
  tr.events.push_back({kind, xi, X, Y});
}

void cap(Trajectory& tr, double xi, double X, double Y, Sampler& s) {
  add_event(tr, EventKind::Capped, xi, X, Y);
  s.push(xi, X, Y);
  tr.connection = ConnectionClass::Undetermined;
}

detail::Rhs field_rhs(const ModelParams& pr, double c) {
  return [pr, c](const State2& x, State2& dx, double) {
    const auto [fx, fy] = vector_field(pr, c, {x[0], x[1]});
    dx[0] = fx;
    dx[1] = fy;
  };
}

detail::Jac field_jacobian(const ModelParams& pr, double c) {
  return [pr, c](const State2& x, std::array<double, 4>& j) {
    const double X = x[0];
    const double Y = x[1];
    const double kn = pr.kn();
    j[0] = 0.0;
    j[1] = 1.0;
    j[2] = -kn * (pr.n - 1.0) * power(X, pr.n - 2.0) * Y - pr.p * power(X, pr.p - 1.0) +
           pr.q * power(X, pr.q - 1.0);
    j[3] = c - kn * power(X, pr.n - 1.0);
  };
}

/// Launch regimes where the orbit leaves P1 along a slow invariant manifold
/// with a much faster transverse relaxation.
bool stiff_launch(const ModelParams& pr, double c) {
  if (pr.q == 1.0) return false;
  if (c < 0.0) return true;
  return c == 0.0 && pr.n < 0.5 * (pr.q + 1.0);
}

enum class PhaseA { Half, Handoff, Capped };

/// Still stiff: the relaxation rate across the slow manifold dwarfs the rate
/// along it.
bool still_stiff(const ModelParams& pr, double c, const State2& x) {
  if (x[0] >= 0.25) return false;
  const double fast = std::abs(c - pr.kn() * power(x[0], pr.n - 1.0));
  const double slow = std::abs(x[1]) / x[0];
  return fast > 100.0 * slow;
}

/// Integrates (X, Y) from `x` at `xi` towards X = 1/2. On return `x`, `xi`
/// hold the state at X = 1/2 (Half) or at the hand-off point (Handoff).
template <class Stepper>
PhaseA run_phase_a(Stepper& a, Trajectory& tr, Sampler& sampler, State2& x, double& xi,
                   const ShootOptions& opts, bool stiff) {
  const ModelParams& pr = tr.params;
  const double rate = std::max({1.0, std::abs(tr.c), pr.kn()});
  a.initialize(x, xi, std::max(1e-3 / rate, 1e-9 * std::abs(xi)));
  auto ident = [](const State2& s) { return s; };
  for (;;) {
    if (++tr.steps > opts.max_steps) {
      const State2 s = a.x1();
      cap(tr, a.t1(), s[0], s[1], sampler);
      return PhaseA::Capped;
    }
    a.step();
    const State2 s = a.x1();
    tr.arc_length += dist(a.x0(), s);
    if (s[0] >= 0.5) {
      xi = a.locate([](const State2& v) { return v[0] - 0.5; });
      x = a.at(xi);
      if (x[1] <= 0.0) {
        throw Error(ErrorCode::IntegrityViolation, "Y <= 0 before X = 1/2");
      }
      sampler.step(a, ident, xi);
      return PhaseA::Half;
    }
    if (s[1] <= 0.0) {
      throw Error(ErrorCode::IntegrityViolation,
                  "trajectory reached Y = 0 at X = " + std::to_string(s[0]) + " < 1");
    }
    sampler.step(a, ident, a.t1());
    if (tr.arc_length > opts.arc_length_cap) {
      cap(tr, a.t1(), s[0], s[1], sampler);
      return PhaseA::Capped;
    }
    if (stiff && !still_stiff(pr, tr.c, s)) {
      x = s;
      xi = a.t1();
      return PhaseA::Handoff;
    }
    // Slow algebraic launches run xi up to ~1e18; keep the current point at
    // xi = 0 so steps stay resolvable.
    const double t = a.t1();
    const double h = t - a.t0();
    if (std::abs(t) > 1e4 && h < 1e-6 * std::abs(t)) {
      for (auto& pt : tr.points) pt.xi -= t;
      for (auto& ev : tr.events) ev.xi -= t;
      a.initialize(s, 0.0, h);
    }
  }
}

Trajectory shoot_once(const ModelParams& pr, double c, double delta, const ShootOptions& opts) {
  Trajectory tr;
  tr.params = pr;
  tr.c = c;
  tr.delta = delta;
  Sampler sampler(tr.points, opts.sample_dxi);
  const PhasePoint start = launch_state(pr, c, delta);
  sampler.push(0.0, start.X, start.Y);

  // Phase A: (X, Y) up to X = 1/2.
  // Stiff launches first run an implicit stepper until the slow/fast rate
  // ratio is moderate, then hand over to the explicit dense stepper.
  PhaseA outcome = PhaseA::Handoff;
  State2 state{start.X, start.Y};
  double xi = 0.0;
  double xi_half = 0.0;
  if (stiff_launch(pr, c)) {
    StiffStepper a(field_rhs(pr, c), field_jacobian(pr, c), opts.atol, opts.rtol);
    outcome = run_phase_a(a, tr, sampler, state, xi, opts, true);
  }
  if (outcome == PhaseA::Handoff) {
    DenseStepper a(field_rhs(pr, c), opts.atol, opts.rtol);
    outcome = run_phase_a(a, tr, sampler, state, xi, opts, false);
  }
  if (outcome == PhaseA::Capped) return tr;
  xi_half = xi;
  State2 half_state = state;
  tr.xi_half = xi_half;
  half_state[0] = 0.5;
  if (tr.points.back().xi < xi_half) {
    sampler.push(xi_half, 0.5, half_state[1]);
  } else {
    tr.points.back() = {xi_half, 0.5, half_state[1]};
  }

  // Phase B: (Z, Y) with Z = X - 1.
  const double p = pr.p;
  const double q = pr.q;
  const double n = pr.n;
  const double kn = pr.kn();
  auto rhs_b = [=](const State2& x, State2& dx, double) {
    const double Z = x[0];
    const double Y = x[1];
    dx[0] = Y;
    if (Z <= -1.0) {
      dx[1] = c * Y;
      return;
    }
    const double lz = std::log1p(Z);
    const double react = std::exp(q * lz) * std::expm1((p - q) * lz);
    dx[1] = c * Y - kn * std::exp((n - 1.0) * lz) * Y - react;
  };
  DenseStepper b(rhs_b, opts.atol, opts.rtol);
  b.initialize({-0.5, half_state[1]}, xi_half,
               std::max(1e-3 / std::max({1.0, std::abs(c), kn}), 1e-9 * std::abs(xi_half)));
  auto to_xy = [](const State2& s) { return State2{1.0 + s[0], s[1]}; };
  auto radius = [](const State2& s) { return std::hypot(s[0], s[1]); };

  std::vector<double> radii = opts.approach_radii;
  std::sort(radii.begin(), radii.end(), std::greater<>());
  std::size_t next_radius = 0;
  double decade = 1.0;
  bool past_x1 = false;

  for (;;) {
    if (++tr.steps > opts.max_steps) {
      const State2 x = to_xy(b.x1());
      cap(tr, b.t1(), x[0], x[1], sampler);
      return tr;
    }
    b.step();
    const State2 x0 = b.x0();
    const State2 x1 = b.x1();
    tr.arc_length += dist(x0, x1);

    // earliest terminal event within the step
    double t_term = std::numeric_limits<double>::infinity();
    enum { None, Axis, Near } term = None;
    if (x1[1] <= 0.0) {
      t_term = b.locate([](const State2& s) { return s[1]; });
      term = Axis;
    }
    if (radius(x1) < opts.eps_p2) {
      const double eps = opts.eps_p2;
      const double t = b.locate([&](const State2& s) { return std::hypot(s[0], s[1]) - eps; });
      if (t < t_term) {
        t_term = t;
        term = Near;
      }
    }
    const double t_end = term == None ? b.t1() : t_term;

    // non-terminal events before t_end
    if (!past_x1 && x1[0] >= 0.0) {
      const double t = b.locate([](const State2& s) { return s[0]; });
      if (t <= t_end) {
        const State2 s = b.at(t);
        add_event(tr, EventKind::CrossedX1, t, 1.0, s[1]);
        past_x1 = true;
      }
    }
    while (next_radius < radii.size() && radius(b.at(t_end)) < radii[next_radius]) {
      const double rr = radii[next_radius];
      double t = b.t0();
      if (radius(x0) > rr) t = b.locate([&](const State2& s) { return std::hypot(s[0], s[1]) - rr; });
      const State2 s = b.at(t);
      if (s[0] < 0.0) tr.approach.push_back({std::hypot(s[0], s[1]), s[1] / s[0]});
      ++next_radius;
    }
    sampler.step(b, to_xy, t_end);

    if (term == Axis) {
      const State2 s = b.at(t_term);
      const State2 xy = to_xy(s);
      add_event(tr, EventKind::HitXAxis, t_term, xy[0], 0.0);
      if (!(s[0] > 0.0)) {
        throw Error(ErrorCode::IntegrityViolation,
                    "trajectory reached Y = 0 at X = " + std::to_string(xy[0]) + " <= 1");
      }
      if (tr.points.back().xi < t_term) sampler.push(t_term, xy[0], 0.0);
      set_overshoot(tr, s[0], false);
      return tr;
    }
    if (term == Near) {
      const State2 s = b.at(t_term);
      const State2 xy = to_xy(s);
      add_event(tr, EventKind::NearP2, t_term, xy[0], xy[1]);
      if (tr.points.back().xi < t_term) sampler.push(t_term, xy[0], xy[1]);
      classify_at_p2(tr, s[0], s[1], opts);
      return tr;
    }
    if (x1[0] > opts.x_max - 1.0 || tr.arc_length > opts.arc_length_cap) {
      const State2 xy = to_xy(x1);
      cap(tr, b.t1(), xy[0], xy[1], sampler);
      return tr;
    }
    // tighten the absolute tolerance as the orbit closes in on P2
    const double r = radius(x1);
    if (r < 0.1 * decade) {
      while (r < 0.1 * decade) decade *= 0.1;
      b.retune(opts.atol * decade);
    }
  }
}

}  // namespace

Trajectory shoot(const ModelParams& params, double c, const ShootOptions& opts) {
  if (!std::isfinite(c)) throw Error(ErrorCode::NonFinite, "velocity must be finite");
  Trajectory tr = shoot_once(params, c, opts.delta, opts);
  for (double d : opts.retry_deltas) {
    if (tr.connection != ConnectionClass::Undetermined) break;
    tr = shoot_once(params, c, d, opts);
  }
  return tr;
}

namespace {

/// Monotone (Y > 0, X increasing) prefix of the sample list.
std::size_t monotone_end(const Trajectory& tr) {
  const auto& pts = tr.points;
  std::size_t i = 1;
  while (i < pts.size() && pts[i].Y > 0.0 && pts[i].X > pts[i - 1].X) ++i;
  return i;
}

}  // namespace

std::optional<double> y_at(const Trajectory& tr, double X) {
  const auto& pts = tr.points;
  if (pts.size() < 2) return std::nullopt;
  const std::size_t end = monotone_end(tr);
  if (end < 2 || X < pts.front().X || X > pts[end - 1].X) return std::nullopt;
  auto it = std::upper_bound(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(end), X,
                             [](double v, const TrajectoryPoint& p) { return v < p.X; });
  std::size_t j = static_cast<std::size_t>(it - pts.begin());
  if (j >= end) j = end - 1;
  if (j == 0) j = 1;
  const TrajectoryPoint& a = pts[j - 1];
  const TrajectoryPoint& b = pts[j];
  const double h = b.X - a.X;
  auto dydx = [&](const TrajectoryPoint& s) {
    return vector_field(tr.params, tr.c, {s.X, s.Y}).second / s.Y;
  };
  const double t = (X - a.X) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * a.Y + h10 * h * dydx(a) + h01 * b.Y + h11 * h * dydx(b);
}

double ProfileTable::value_at(double xi) const {
  if (samples.empty()) return 0.0;
  if (xi <= samples.front().xi) return samples.front().f;
  if (xi >= samples.back().xi) return samples.back().f;
  auto it = std::upper_bound(samples.begin(), samples.end(), xi,
                             [](double v, const ProfileSample& s) { return v < s.xi; });
  const ProfileSample& b = *it;
  const ProfileSample& a = *(it - 1);
  const double w = (xi - a.xi) / (b.xi - a.xi);
  return a.f + w * (b.f - a.f);
}

double ProfileTable::half_level_xi() const {
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const ProfileSample& a = samples[i - 1];
    const ProfileSample& b = samples[i];
    if (a.f <= 0.5 && b.f >= 0.5) {
      if (b.f == a.f) return a.xi;
      return a.xi + (0.5 - a.f) / (b.f - a.f) * (b.xi - a.xi);
    }
  }
  throw Error(ErrorCode::NoCrossing, "profile does not cross 1/2");
}

ProfileTable reconstruct_profile(const Trajectory& tr, const ProfileOptions& opts) {
  if (!is_direct(tr.connection)) {
    throw Error(ErrorCode::NotAConnection,
                std::string("trajectory is ") + std::string(to_string(tr.connection)) +
                    ", not a direct connection");
  }
  if (!tr.xi_half || tr.points.size() < 3) {
    throw Error(ErrorCode::NotAConnection, "trajectory carries no samples; shoot with sample_dxi > 0");
  }
  const double x_shift = *tr.xi_half;
  const auto& pts = tr.points;
  const std::size_t end = monotone_end(tr);

  ProfileTable table;
  table.c = tr.c;
  auto& out = table.samples;

  // left tail: one extrapolated point below the launch level
  const TrajectoryPoint& first = pts.front();
  if (first.X >= 1e-6 && first.Y > 0.0) {
    const double rate = first.Y / first.X;
    out.push_back({first.xi - x_shift - std::log(4.0) / rate, 0.25 * first.X});
  }

  auto accel = [&](const TrajectoryPoint& s) { return vector_field(tr.params, tr.c, {s.X, s.Y}).second; };
  const double w = opts.core_half_width;
  const double h = opts.spacing;
  for (std::size_t i = 0; i + 1 < end; ++i) {
    const TrajectoryPoint& a = pts[i];
    const TrajectoryPoint& b = pts[i + 1];
    const double xa = a.xi - x_shift;
    const double xb = b.xi - x_shift;
    if (xb <= -w || xa >= w) {
      if (out.empty() || xa > out.back().xi) out.push_back({xa, a.X});
      continue;
    }
    if (xa < -w && (out.empty() || xa > out.back().xi)) out.push_back({xa, a.X});
    const double L = b.xi - a.xi;
    const double fa = a.X, da = a.Y * L, sa = accel(a) * L * L;
    const double fb = b.X, db = b.Y * L, sb = accel(b) * L * L;
    double j = std::ceil(std::max(xa, -w) / h);
    for (;; j += 1.0) {
      const double x = j * h;
      if (x >= xb || x > w) break;
      if (x < xa || (!out.empty() && x <= out.back().xi)) continue;
      const double s = (x - xa) / L;
      const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
      const double f = fa * (1 - 10 * s3 + 15 * s4 - 6 * s5) + da * (s - 6 * s3 + 8 * s4 - 3 * s5) +
                       sa * (0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5) +
                       fb * (10 * s3 - 15 * s4 + 6 * s5) + db * (-4 * s3 + 7 * s4 - 3 * s5) +
                       sb * (0.5 * s3 - s4 + 0.5 * s5);
      out.push_back({x, f});
    }
  }
  const TrajectoryPoint& last = pts[end - 1];
  if (out.empty() || last.xi - x_shift > out.back().xi) out.push_back({last.xi - x_shift, last.X});
  return table;
}

double flow_sign_across(const ModelParams& params, double c, double curve_value, double curve_slope,
                        double X) {
  const auto [fx, fy] = vector_field(params, c, {X, curve_value});
  return curve_slope * fx - fy;
}

}  // namespace frontlab

namespace frontlab {

Trajectory stable_branch(const ModelParams& pr, double c, double rho, const ShootOptions& opts) {
  const EigenData e = p2_eigen(pr, c);
  if (!e.is_real() || e.lambda_plus >= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "stable branch needs P2 to be a stable node");
  }
  if (!(rho > 0.0 && rho < 0.1)) throw Error(ErrorCode::InvalidArgument, "rho must lie in (0, 0.1)");
  Trajectory tr;
  tr.params = pr;
  tr.c = c;
  tr.delta = rho;
  tr.connection = ConnectionClass::DirectCritical;

  const auto fwd = field_rhs(pr, c);
  detail::Rhs rev = [fwd](const State2& x, State2& dx, double t) {
    fwd(x, dx, t);
    dx[0] = -dx[0];
    dx[1] = -dx[1];
  };
  detail::DenseStepper st(rev, opts.atol, opts.rtol);
  State2 x{1.0 - rho, -rho * e.lambda_minus};
  st.initialize(x, 0.0, 1e-3 / std::abs(e.lambda_minus));

  std::vector<TrajectoryPoint> back{{0.0, x[0], x[1]}};
  const double dxi = opts.sample_dxi > 0.0 ? opts.sample_dxi : 0.02;
  double next = dxi;
  bool done = false;
  for (long n = 0; n < opts.max_steps && !done; ++n) {
    st.step();
    ++tr.steps;
    const State2& b = st.x1();
    tr.arc_length += dist(st.x0(), b);
    double t_end = st.t1();
    if (b[0] <= 0.0) {
      t_end = st.locate([](const State2& s) { return s[0]; });
      done = true;
    } else if (b[1] <= 0.0) {
      t_end = st.locate([](const State2& s) { return s[1]; });
      done = true;
    }
    for (; next < t_end; next += dxi) {
      const State2 s = st.at(next);
      back.push_back({-next, s[0], s[1]});
    }
    const State2 s = done ? st.at(t_end) : b;
    back.push_back({-t_end, done && b[0] <= 0.0 ? 0.0 : s[0], done && b[0] > 0.0 ? 0.0 : s[1]});
    if (done) {
      add_event(tr, b[0] <= 0.0 ? EventKind::CrossedYAxis : EventKind::HitXAxis, -t_end, back.back().X,
                back.back().Y);
    } else if (b[0] > opts.x_max || tr.arc_length > opts.arc_length_cap) {
      add_event(tr, EventKind::Capped, -t_end, b[0], b[1]);
      break;
    }
  }
  if (tr.events.empty()) add_event(tr, EventKind::Capped, back.back().xi, back.back().X, back.back().Y);
  tr.points.assign(back.rbegin(), back.rend());
  return tr;
}

}  // namespace frontlab
