#include "frontlab/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

#include "frontlab/error.hpp"

namespace frontlab::io {

namespace {

struct Precision {
  explicit Precision(std::ostream& os) : os_(os), flags_(os.flags()), prec_(os.precision()) {
    os_.precision(17);
  }
  ~Precision() {
    os_.flags(flags_);
    os_.precision(prec_);
  }
  std::ostream& os_;
  std::ios::fmtflags flags_;
  std::streamsize prec_;
};

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  Precision guard(os);
  os << "xi,X,Y\n";
  for (const auto& p : traj.points) os << p.xi << ',' << p.X << ',' << p.Y << '\n';
}

void write_profile_csv(std::ostream& os, const ProfileTable& table) {
  Precision guard(os);
  os << "xi,f\n";
  for (const auto& s : table.samples) os << s.xi << ',' << s.f << '\n';
}

void write_snapshots_csv(std::ostream& os, const Simulation& sim) {
  Precision guard(os);
  os << "t,x,u\n";
  for (const auto& f : sim.snapshots) {
    for (std::size_t i = 0; i < f.u.size(); ++i) os << f.t << ',' << sim.grid.x(i) << ',' << f.u[i] << '\n';
  }
}

void write_trace_csv(std::ostream& os, const FrontTrace& trace) {
  Precision guard(os);
  os << "t,x_front\n";
  for (const auto& s : trace.samples) os << s.t << ',' << s.x_front << '\n';
}

void write_explicit_csv(std::ostream& os, const std::vector<ExplicitRow>& rows) {
  Precision guard(os);
  os << "case_id,residual,sign_ok,shoot_deviation\n";
  for (const auto& r : rows) {
    os << r.case_id << ',' << r.residual << ',' << (r.sign_ok ? "true" : "false") << ',' << r.shoot_deviation
       << '\n';
  }
}

nlohmann::json to_json(const ModelParams& p) {
  return {{"n", p.n}, {"p", p.p}, {"q", p.q}, {"k", p.k}, {"reference_range", p.reference_range}};
}

nlohmann::json to_json(const EigenData& e) {
  return {{"lambda_plus", number(e.lambda_plus)},
          {"lambda_minus", number(e.lambda_minus)},
          {"imag_part", number(e.imag_part)},
          {"discriminant", number(e.discriminant)},
          {"e_plus", {1.0, number(e.lambda_plus)}},
          {"e_minus", {1.0, number(e.lambda_minus)}},
          {"p2_class", std::string(to_string(e.p2_class))}};
}

nlohmann::json to_json(const CriticalResult& r) {
  return {{"value", number(r.value)},
          {"bracket_lo", number(r.bracket_lo)},
          {"bracket_hi", number(r.bracket_hi)},
          {"tol", r.tol},
          {"evaluations", r.evaluations},
          {"closed_form", r.closed_form}};
}

nlohmann::json simulation_summary(const Simulation& sim, double shape_error_final) {
  nlohmann::json j;
  j["params"] = to_json(sim.params);
  j["ic"] = std::string(to_string(sim.ic));
  j["T"] = sim.T;
  j["L"] = sim.grid.L;
  j["dx"] = sim.grid.dx;
  j["dt"] = sim.dt;
  j["fitted_speed"] = number(sim.trace.fitted_speed);
  j["fit_residual"] = number(sim.trace.fit_residual);
  j["shape_error_final"] = number(shape_error_final);
  j["u_origin_final"] = value_at(sim.final_field, sim.grid, 0.0);
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error(ErrorCode::IoFailure, "failed writing '" + path + "'");
}

}  // namespace frontlab::io
