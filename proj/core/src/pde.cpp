#include "frontlab/pde.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "frontlab/critical.hpp"
#include "frontlab/error.hpp"

namespace frontlab {

namespace {

constexpr double kRangeEps = 1e-9;
constexpr double kMonotoneTol = 1e-10;
constexpr double kOrderTol = 1e-6;

/// Method-of-lines right-hand side with reusable buffers.
class Rhs {
 public:
  Rhs(const ModelParams& pr, double dx) : pr_(pr), inv_dx2_(1.0 / (dx * dx)), cf_(pr.k / (2.0 * dx)) {}

  void operator()(const std::vector<double>& u, std::vector<double>& out) {
    const std::size_t m = u.size();
    flux_.resize(m);
    for (std::size_t i = 0; i < m; ++i) flux_[i] = power(u[i], pr_.n);
    out.assign(m, 0.0);
    for (std::size_t i = 1; i + 1 < m; ++i) {
      const double ui = u[i];
      out[i] = (u[i + 1] - 2.0 * ui + u[i - 1]) * inv_dx2_ + cf_ * (flux_[i + 1] - flux_[i - 1]) +
               power(ui, pr_.p) - power(ui, pr_.q);
    }
  }

 private:
  ModelParams pr_;
  double inv_dx2_;
  double cf_;
  std::vector<double> flux_;
};

class Integrator {
 public:
  Integrator(const ModelParams& pr, const Grid& g) : rhs_(pr, g.dx), pr_(pr), grid_(g) {}

  void advance(Field& f, double dt) {
    if (!(dt > 0.0) || dt > cfl_bound(pr_, grid_.dx) * (1.0 + 1e-12)) {
      throw Error(ErrorCode::CFLViolated, "dt = " + std::to_string(dt) + " exceeds the stability bound " +
                                              std::to_string(cfl_bound(pr_, grid_.dx)));
    }
    auto& u = f.u;
    const std::size_t m = u.size();
    rhs_(u, k_);
    u1_.resize(m);
    for (std::size_t i = 0; i < m; ++i) u1_[i] = u[i] + dt * k_[i];
    rhs_(u1_, k_);
    for (std::size_t i = 1; i + 1 < m; ++i) u[i] = 0.5 * (u[i] + u1_[i] + dt * k_[i]);
    f.t += dt;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(u[i] >= -kRangeEps && u[i] <= 1.0 + kRangeEps)) {
        throw Error(ErrorCode::RangeViolated, "u = " + std::to_string(u[i]) + " at x = " +
                                                  std::to_string(grid_.x(i)) + ", t = " + std::to_string(f.t));
      }
    }
  }

 private:
  Rhs rhs_;
  ModelParams pr_;
  Grid grid_;
  std::vector<double> k_, u1_;
};

void check_size(const Field& f, const Grid& g) {
  if (f.u.size() != g.size()) throw Error(ErrorCode::InvalidArgument, "field does not match grid");
}

void check_monotone(const Field& f, bool increasing) {
  for (std::size_t i = 1; i < f.u.size(); ++i) {
    const double d = f.u[i] - f.u[i - 1];
    if (increasing ? d < -kMonotoneTol : d > kMonotoneTol) {
      throw Error(ErrorCode::MonotonicityViolated, "monotonicity lost at node " + std::to_string(i) +
                                                       ", t = " + std::to_string(f.t));
    }
  }
}

std::size_t crossing_index(const Field& f, double level) {
  const auto& u = f.u;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    if ((u[i] < level && u[i + 1] >= level) || (u[i] > level && u[i + 1] <= level)) return i;
  }
  throw Error(ErrorCode::NoCrossing, "field does not cross level " + std::to_string(level));
}

}  // namespace

Grid make_grid(double L, double dx) {
  if (!(dx > 0.0) || !std::isfinite(L) || !std::isfinite(dx)) {
    throw Error(ErrorCode::InvalidArgument, "grid needs dx > 0 and finite L");
  }
  const double n = std::round(L / dx);
  if (2.0 * n < 100.0) throw Error(ErrorCode::InvalidArgument, "grid needs at least 100 cells");
  Grid g;
  g.N = 2 * static_cast<std::size_t>(n);
  g.dx = dx;
  g.L = n * dx;
  return g;
}

std::string_view to_string(IcKind kind) noexcept {
  switch (kind) {
    case IcKind::Heaviside: return "heaviside";
    case IcKind::AntiHeaviside: return "antiheaviside";
    case IcKind::TailGeneral: return "tail";
  }
  return "?";
}

IcKind parse_ic(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (s == "heaviside") return IcKind::Heaviside;
  if (s == "antiheaviside" || s == "anti-heaviside" || s == "anti") return IcKind::AntiHeaviside;
  if (s == "tail" || s == "tailgeneral" || s == "general") return IcKind::TailGeneral;
  throw Error(ErrorCode::InvalidArgument, "unknown initial condition '" + s + "'");
}

double TailParams::left_bound(double x) const {
  if (cbar > 0.0 || !covered) return C_minus * std::exp(left_rate * x);
  return std::pow(std::abs(cbar) / (q - 1.0), 1.0 / (q - 1.0)) * std::pow(std::abs(x), -1.0 / (q - 1.0));
}

double TailParams::right_bound(double x) const { return 1.0 - C_plus * std::exp(right_rate * x); }

TailParams make_tail_params(const ModelParams& params, double cbar, double C_minus, double C_plus,
                            double R_minus, double R_plus) {
  if (!std::isfinite(cbar) || cbar == 0.0) {
    throw Error(ErrorCode::InvalidTailParams, "tail bounds need a finite nonzero critical velocity");
  }
  if (!(C_minus > 0.0) || !(C_plus > 0.0)) throw Error(ErrorCode::InvalidTailParams, "tail constants must be positive");
  if (!(R_minus < R_plus)) throw Error(ErrorCode::InvalidTailParams, "need R_minus < R_plus");
  TailParams t;
  t.C_minus = C_minus;
  t.C_plus = C_plus;
  t.R_minus = R_minus;
  t.R_plus = R_plus;
  t.cbar = cbar;
  t.q = params.q;
  t.covered = params.q > 1.0;
  if (t.covered) {
    if (cbar < 0.0 && !(R_minus < 0.0)) {
      throw Error(ErrorCode::InvalidTailParams, "algebraic left tail needs R_minus < 0");
    }
    t.left_rate = cbar;
  } else {
    // q = 1: P1 is a saddle with unstable rate (c + sqrt(c^2 + 4))/2.
    t.left_rate = 0.5 * (cbar + std::sqrt(cbar * cbar + 4.0));
  }
  const EigenData e = p2_eigen(params, cbar);
  if (!e.is_real()) throw Error(ErrorCode::InvalidTailParams, "P2 is a focus at the given velocity");
  t.right_rate = e.lambda_minus;
  return t;
}

Field initial_condition(IcKind kind, const Grid& grid, const std::optional<TailParams>& tail) {
  Field f;
  f.u.resize(grid.size());
  const double eps = 1e-9 * grid.dx;
  switch (kind) {
    case IcKind::Heaviside:
    case IcKind::AntiHeaviside: {
      const bool anti = kind == IcKind::AntiHeaviside;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double h = grid.x(i) < -eps ? 0.0 : 1.0;
        f.u[i] = anti ? 1.0 - h : h;
      }
      break;
    }
    case IcKind::TailGeneral: {
      if (!tail) throw Error(ErrorCode::InvalidTailParams, "tail initial condition needs tail parameters");
      const TailParams& t = *tail;
      const double a = 0.5 * std::min(t.left_bound(t.R_minus), 1.0);
      const double b = std::max(std::max(t.right_bound(t.R_plus), 0.0), a);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.x(i);
        double v;
        if (x < t.R_minus) {
          v = 0.5 * std::min(t.left_bound(x), 1.0);
        } else if (x <= t.R_plus) {
          v = a + (b - a) * (x - t.R_minus) / (t.R_plus - t.R_minus);
        } else {
          v = std::max(t.right_bound(x), a);
        }
        f.u[i] = v;
      }
      f.u.front() = 0.0;
      f.u.back() = 1.0;
      break;
    }
  }
  return f;
}

Field sample_field(const Grid& grid, const std::function<double(double)>& fn, double t) {
  Field f;
  f.t = t;
  f.u.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) f.u[i] = fn(grid.x(i));
  return f;
}

double cfl_bound(const ModelParams& params, double dx) {
  return std::min(0.5 * dx * dx, dx / params.kn());
}

Field step(const ModelParams& params, const Field& f, double dt, const Grid& grid) {
  check_size(f, grid);
  Field out = f;
  Integrator(params, grid).advance(out, dt);
  return out;
}

double front_position(const Field& f, const Grid& grid, double level) {
  check_size(f, grid);
  const auto [lo, hi] = std::minmax_element(f.u.begin(), f.u.end());
  if (!(level > *lo && level < *hi)) {
    throw Error(ErrorCode::NoCrossing, "level " + std::to_string(level) + " outside the field range");
  }
  const std::size_t i = crossing_index(f, level);
  const double a = f.u[i];
  const double b = f.u[i + 1];
  return grid.x(i) + (level - a) / (b - a) * grid.dx;
}

double value_at(const Field& f, const Grid& grid, double x) {
  check_size(f, grid);
  const double s = (x - grid.x(0)) / grid.dx;
  if (s <= 0.0) return f.u.front();
  if (s >= static_cast<double>(grid.N)) return f.u.back();
  const auto i = static_cast<std::size_t>(s);
  const double w = s - static_cast<double>(i);
  return (1.0 - w) * f.u[i] + w * f.u[std::min(i + 1, grid.N)];
}

double fit_speed(FrontTrace& trace, double window_fraction) {
  const auto& s = trace.samples;
  if (s.size() < 10) throw Error(ErrorCode::TooFewSamples, "front trace has fewer than 10 samples");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "window fraction must lie in (0, 1]");
  }
  const double t1 = s.back().t;
  const double t0 = t1 - window_fraction * (t1 - s.front().t);
  double st = 0, sx = 0, stt = 0, stx = 0;
  int m = 0;
  for (const auto& p : s) {
    if (p.t < t0 - 1e-12) continue;
    st += p.t;
    sx += p.x_front;
    ++m;
  }
  if (m < 10) throw Error(ErrorCode::TooFewSamples, "fewer than 10 samples in the fit window");
  const double tm = st / m;
  const double xm = sx / m;
  for (const auto& p : s) {
    if (p.t < t0 - 1e-12) continue;
    stt += (p.t - tm) * (p.t - tm);
    stx += (p.t - tm) * (p.x_front - xm);
  }
  const double slope = stx / stt;
  double ss = 0;
  for (const auto& p : s) {
    if (p.t < t0 - 1e-12) continue;
    const double r = p.x_front - (xm + slope * (p.t - tm));
    ss += r * r;
  }
  trace.fitted_speed = slope;
  trace.fit_t0 = t0;
  trace.fit_t1 = t1;
  trace.fit_residual = std::sqrt(ss / m);
  return slope;
}

double shape_error(const Field& f, const Grid& grid, const ProfileTable& profile) {
  if (profile.samples.size() < 2) throw Error(ErrorCode::InvalidArgument, "empty profile table");
  const double shift = front_position(f, grid) - profile.half_level_xi();
  const double lo = profile.samples.front().xi;
  const double hi = profile.samples.back().xi;
  double err = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double xi = grid.x(i) - shift;
    if (xi < lo || xi > hi) continue;
    err = std::max(err, std::abs(f.u[i] - profile.value_at(xi)));
  }
  return err;
}

Simulation simulate(const ModelParams& params, IcKind ic, double T, const SimulationOptions& opts) {
  if (!(T > 0.0) || !std::isfinite(T)) throw Error(ErrorCode::InvalidArgument, "T must be positive");
  if (!(opts.safety > 0.0 && opts.safety <= 1.0)) throw Error(ErrorCode::InvalidArgument, "safety must lie in (0, 1]");
  if (!(opts.snapshot_every > 0.0)) throw Error(ErrorCode::InvalidArgument, "snapshot interval must be positive");
  if (ic == IcKind::TailGeneral && !opts.tail) {
    throw Error(ErrorCode::InvalidTailParams, "tail initial condition needs tail parameters");
  }

  double speed = 0.0;
  if (opts.predicted_speed) {
    speed = *opts.predicted_speed;
  } else if (ic == IcKind::AntiHeaviside) {
    speed = params.kn() + 2.0 * std::sqrt(params.p - params.q);
  } else if (ic == IcKind::TailGeneral) {
    speed = opts.tail->cbar;
  } else {
    speed = cbar(params).value;
  }

  Simulation sim;
  sim.params = params;
  sim.ic = ic;
  sim.T = T;
  sim.grid = make_grid(std::max(opts.L, std::abs(speed) * T + 20.0), opts.dx);
  const Grid& g = sim.grid;

  Field f = initial_condition(ic, g, opts.tail);
  const bool increasing = ic != IcKind::AntiHeaviside;
  const double dt_max = opts.safety * cfl_bound(params, g.dx);
  sim.dt = dt_max;

  Integrator integ(params, g);
  // deviation of the nodes next to the pinned ends from their boundary value
  auto edge_dev = [&](const Field& fld) {
    return std::max(std::abs(fld.u[1] - fld.u[0]), std::abs(fld.u[g.N - 1] - fld.u[g.N]));
  };
  const double edge0 = edge_dev(f);
  auto record = [&](const Field& fld) {
    check_monotone(fld, increasing);
    if (edge_dev(fld) > edge0 + 0.01) {
      throw Error(ErrorCode::DomainTooSmall, "solution piles up against a pinned boundary at t = " +
                                                  std::to_string(fld.t));
    }
    const auto [lo, hi] = std::minmax_element(fld.u.begin(), fld.u.end());
    if (0.5 > *lo && 0.5 < *hi) {
      const std::size_t i = crossing_index(fld, 0.5);
      if (i < 5 || i + 5 > g.N) {
        throw Error(ErrorCode::DomainTooSmall, "front within 5 cells of the boundary at t = " + std::to_string(fld.t));
      }
      sim.trace.samples.push_back({fld.t, front_position(fld, g)});
    }
    if (opts.keep_snapshots) sim.snapshots.push_back(fld);
  };

  record(f);
  const auto n_snap = static_cast<long>(std::ceil(T / opts.snapshot_every - 1e-9));
  for (long s = 1; s <= n_snap; ++s) {
    const double t_target = std::min(T, static_cast<double>(s) * opts.snapshot_every);
    const double span = t_target - f.t;
    const auto m = static_cast<long>(std::ceil(span / dt_max - 1e-9));
    const double dt = span / static_cast<double>(std::max(m, 1L));
    for (long j = 0; j < m; ++j) integ.advance(f, dt);
    f.t = t_target;
    record(f);
  }
  sim.final_field = f;
  if (sim.trace.samples.size() >= 10) {
    try {
      fit_speed(sim.trace, opts.window_fraction);
    } catch (const Error&) {
      // too few samples in the fit window: leave the fit empty
    }
  }
  return sim;
}

double TruncatedWave::shape(double s) const {
  if (profile.empty()) return truncation == Truncation::ZeroLeft ? 0.0 : 1.0;
  if (truncation == Truncation::ZeroLeft && s <= 0.0) return 0.0;
  if (truncation == Truncation::OneRight && s >= 0.0) return 1.0;
  const auto& a = profile.front();
  const auto& b = profile.back();
  if (s <= a.xi) return truncation == Truncation::OneRight ? a.f * std::exp(tail_rate * (s - a.xi)) : a.f;
  if (s >= b.xi) return b.f;
  auto it = std::upper_bound(profile.begin(), profile.end(), s,
                             [](double v, const ProfileSample& p) { return v < p.xi; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  return lo.f + (s - lo.xi) / (hi.xi - lo.xi) * (hi.f - lo.f);
}

TruncatedWave build_subsolution(const ModelParams& params, double c, double R) {
  const Trajectory shot = shoot(params, c, ShootOptions{.sample_dxi = 0.0});
  if (shot.connection != ConnectionClass::DirectLeading) {
    throw Error(ErrorCode::WrongVelocitySide, "subsolution needs c below the critical velocity (shoot gives " +
                                                  std::string(to_string(shot.connection)) + ")");
  }
  const Trajectory br = stable_branch(params, c);
  if (br.events.empty() || br.events.back().kind != EventKind::CrossedYAxis) {
    throw Error(ErrorCode::WrongVelocitySide, "non-leading branch does not reach X = 0");
  }
  TruncatedWave w;
  w.kind = WaveKind::Subsolution;
  w.truncation = Truncation::ZeroLeft;
  w.c = c;
  w.R = R;
  const double xi0 = br.events.back().xi;
  for (const auto& p : br.points) {
    const double s = p.xi - xi0;
    if (!w.profile.empty() && s <= w.profile.back().xi) continue;
    w.profile.push_back({s, std::max(p.X, 0.0)});
  }
  return w;
}

TruncatedWave build_supersolution(const ModelParams& params, double c, double R) {
  const Trajectory shot = shoot(params, c);
  if (shot.connection != ConnectionClass::Overshoot) {
    throw Error(ErrorCode::WrongVelocitySide, "supersolution needs c above the critical velocity (shoot gives " +
                                                  std::string(to_string(shot.connection)) + ")");
  }
  double xi1 = shot.points.back().xi;
  for (const auto& e : shot.events) {
    if (e.kind == EventKind::CrossedX1) {
      xi1 = e.xi;
      break;
    }
  }
  TruncatedWave w;
  w.kind = WaveKind::Supersolution;
  w.truncation = Truncation::OneRight;
  w.c = c;
  w.R = R;
  for (const auto& p : shot.points) {
    if (p.xi >= xi1) break;
    const double s = p.xi - xi1;
    if (!w.profile.empty() && s <= w.profile.back().xi) continue;
    w.profile.push_back({s, std::min(p.X, 1.0)});
  }
  w.profile.push_back({0.0, 1.0});
  const auto& first = shot.points.front();
  w.tail_rate = first.Y / first.X;
  return w;
}

bool comparison_check(const Simulation& sim, const TruncatedWave& wave) {
  if (sim.snapshots.empty()) throw Error(ErrorCode::InvalidArgument, "simulation kept no snapshots");
  const bool sub = wave.kind == WaveKind::Subsolution;
  bool first = true;
  for (const Field& f : sim.snapshots) {
    for (std::size_t i = 0; i < sim.grid.size(); ++i) {
      const double U = wave.value(sim.grid.x(i), f.t);
      const bool ok = sub ? f.u[i] >= U - kOrderTol : f.u[i] <= U + kOrderTol;
      if (!ok) {
        if (first) {
          throw Error(ErrorCode::InitialOrderViolated,
                      "initial data not ordered against the wave at x = " + std::to_string(sim.grid.x(i)));
        }
        return false;
      }
    }
    first = false;
  }
  return true;
}

}  // namespace frontlab
