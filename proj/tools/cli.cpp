#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "frontlab/catalog.hpp"
#include "frontlab/critical.hpp"
#include "frontlab/error.hpp"
#include "frontlab/io.hpp"
#include "frontlab/model.hpp"
#include "frontlab/pde.hpp"
#include "frontlab/phaseplane.hpp"
#include "frontlab/selfmap.hpp"
#include "suite.hpp"

namespace frontlab::cli {

namespace {

using nlohmann::json;

const char* const kCommands[] = {"eigen", "classify", "cbar", "kstar", "profile",
                                 "simulate", "verify-explicit", "selfmap"};

bool is_command(const std::string& s) {
  return std::find(std::begin(kCommands), std::end(kCommands), s) != std::end(kCommands);
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  std::ostringstream os;
  os.precision(17);
  if (v.is_number_integer()) {
    os << v.get<long long>();
  } else {
    os << v.get<double>();
  }
  return os.str();
}

/// Splices `--config file.json` into the argument list: keys become flags
/// unless already given explicitly; "command" selects the subcommand.
void apply_config(std::vector<std::string>& args) {
  auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return;
  if (it + 1 == args.end()) throw Error(ErrorCode::InvalidArgument, "--config needs a file name");
  const std::string path = *(it + 1);
  args.erase(it, it + 2);
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read config '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "config '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
  const bool has_cmd = std::any_of(args.begin(), args.end(), is_command);
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") {
      if (!has_cmd) args.insert(args.begin(), value.get<std::string>());
      continue;
    }
    const std::string flag = "--" + key;
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_primitive()) {
      args.push_back(flag);
      args.push_back(scalar_text(value));
    } else {
      throw Error(ErrorCode::InvalidArgument, "config key '" + key + "' must be a scalar");
    }
  }
}

struct Npqk {
  double n = 0, p = 0, q = 0, k = 0;
};

void add_npq(CLI::App* cmd, Npqk& v) {
  cmd->add_option("--n", v.n, "convection exponent")->required();
  cmd->add_option("--p", v.p, "reaction exponent")->required();
  cmd->add_option("--q", v.q, "absorption exponent")->required();
}

void add_npqk(CLI::App* cmd, Npqk& v) {
  add_npq(cmd, v);
  cmd->add_option("--k", v.k, "convection coefficient")->required();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json opt(const std::optional<double>& v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_file(path, text);
  }
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  try {
    apply_config(args);

    CLI::App app{"frontlab: traveling fronts of u_t = u_xx + k (u^n)_x + u^p - u^q"};
    app.set_help_all_flag("--help-all");
    bool paper_suite = false;
    app.add_flag("--paper-suite", paper_suite, "run the acceptance matrix and print PASS/FAIL lines");
    app.require_subcommand(0, 1);

    Npqk m;
    double c = 0.0;
    double tol = 1e-8;
    std::string out_path;

    auto* eigen = app.add_subcommand("eigen", "eigenvalues and stability class of P2");
    add_npqk(eigen, m);
    eigen->add_option("--c", c, "velocity")->required();

    auto* classify = app.add_subcommand("classify", "shoot from P1 and classify the orbit");
    add_npqk(classify, m);
    classify->add_option("--c", c, "velocity")->required();

    auto* cbar_cmd = app.add_subcommand("cbar", "critical velocity by bisection");
    add_npqk(cbar_cmd, m);
    cbar_cmd->add_option("--tol", tol, "bisection tolerance");

    auto* kstar_cmd = app.add_subcommand("kstar", "vanishing/spreading threshold coefficient");
    add_npq(kstar_cmd, m);
    kstar_cmd->add_option("--tol", tol, "bisection tolerance");

    std::optional<double> profile_c;
    double spacing = 0.01;
    auto* profile = app.add_subcommand("profile", "wave profile table (CSV xi,f)");
    add_npqk(profile, m);
    profile->add_option("--c", profile_c, "velocity (default: critical)");
    profile->add_option("--spacing", spacing, "xi spacing of the table");
    profile->add_option("--out", out_path, "output file (default stdout)");

    std::string ic = "heaviside";
    double T = 30.0;
    SimulationOptions so;
    double C_minus = 1.0, C_plus = 1.0, R_minus = -5.0, R_plus = 5.0;
    std::string snapshots_path, trace_path;
    auto* sim_cmd = app.add_subcommand("simulate", "PDE run from step-like data");
    add_npqk(sim_cmd, m);
    sim_cmd->add_option("--ic", ic, "heaviside | antiheaviside | tail");
    sim_cmd->add_option("--T", T, "final time");
    sim_cmd->add_option("--L", so.L, "minimum half-width of the domain");
    sim_cmd->add_option("--dx", so.dx, "grid spacing");
    sim_cmd->add_option("--safety", so.safety, "fraction of the stability bound used as time step");
    sim_cmd->add_option("--snapshot-every", so.snapshot_every, "snapshot interval");
    sim_cmd->add_option("--C-minus", C_minus, "tail data: left constant");
    sim_cmd->add_option("--C-plus", C_plus, "tail data: right constant");
    sim_cmd->add_option("--R-minus", R_minus, "tail data: left cut");
    sim_cmd->add_option("--R-plus", R_plus, "tail data: right cut");
    sim_cmd->add_option("--snapshots", snapshots_path, "write snapshots CSV (t,x,u)");
    sim_cmd->add_option("--trace", trace_path, "write front trace CSV (t,x_front)");
    sim_cmd->add_option("--out", out_path, "write summary JSON here instead of stdout");

    std::string case_id;
    auto* verify = app.add_subcommand("verify-explicit", "residual table of the closed-form catalogue");
    verify->add_option("--case", case_id, "single case id");
    verify->add_option("--out", out_path, "output file (default stdout)");

    double n1 = 0, p1 = 0, q1 = 0, k1 = 0, n2 = 0;
    bool check_kstar = false;
    auto* selfmap = app.add_subcommand("selfmap", "parameter self-map at c = 0");
    selfmap->add_option("--n1", n1, "source convection exponent")->required();
    selfmap->add_option("--p1", p1, "source reaction exponent")->required();
    selfmap->add_option("--q1", q1, "source absorption exponent")->required();
    selfmap->add_option("--k1", k1, "source convection coefficient")->required();
    selfmap->add_option("--n2", n2, "target convection exponent")->required();
    selfmap->add_flag("--check-kstar", check_kstar, "also compare k* sqrt(n) on both sides");
    selfmap->add_option("--tol", tol, "bisection tolerance for --check-kstar");

    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kOk : kValidation;
    }

    if (paper_suite) {
      suite::PaperSuite s;
      const auto results = s.run_all(&out);
      const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
      out << (all ? "ALL PASS" : "SOME FAILED") << '\n';
      return all ? kOk : kNumerical;
    }

    BisectionOptions bo;
    bo.tol = tol;

    if (*eigen) {
      const ModelParams pr = validate_params(m.n, m.p, m.q, m.k);
      json j = io::to_json(p2_eigen(pr, c));
      j["c"] = c;
      out << dump(j);
    } else if (*classify) {
      const ModelParams pr = validate_params(m.n, m.p, m.q, m.k);
      ShootOptions sh;
      sh.sample_dxi = 0.0;
      const Trajectory tr = shoot(pr, c, sh);
      out << dump({{"c", c},
                   {"connection", std::string(to_string(tr.connection))},
                   {"x0", opt(tr.x0_crossing)},
                   {"x0_excess", opt(tr.x0_excess)},
                   {"terminal_slope", opt(tr.terminal_slope)},
                   {"degenerate", tr.degenerate},
                   {"crossing_extrapolated", tr.crossing_extrapolated}});
    } else if (*cbar_cmd) {
      const ModelParams pr = validate_params(m.n, m.p, m.q, m.k);
      json j = io::to_json(cbar(pr, bo));
      if (const auto closed = cbar_explicit(pr)) j["closed_form_value"] = *closed;
      out << dump(j);
    } else if (*kstar_cmd) {
      out << dump(io::to_json(kstar(m.n, m.p, m.q, bo)));
    } else if (*profile) {
      const ModelParams pr = validate_params(m.n, m.p, m.q, m.k);
      const double cv = profile_c ? *profile_c : cbar(pr).bracket_lo;
      ProfileOptions po;
      po.spacing = spacing;
      if (!(spacing > 0.0)) throw Error(ErrorCode::InvalidArgument, "--spacing must be positive");
      std::ostringstream os;
      io::write_profile_csv(os, reconstruct_profile(shoot(pr, cv), po));
      emit(out, out_path, os.str());
    } else if (*sim_cmd) {
      const ModelParams pr = validate_params(m.n, m.p, m.q, m.k);
      const IcKind kind = parse_ic(ic);
      std::optional<CriticalResult> cb;
      if (kind != IcKind::AntiHeaviside) {
        cb = cbar(pr);
        so.predicted_speed = cb->value;
      }
      if (kind == IcKind::TailGeneral) so.tail = make_tail_params(pr, cb->value, C_minus, C_plus, R_minus, R_plus);
      so.keep_snapshots = !snapshots_path.empty();
      const Simulation sim = simulate(pr, kind, T, so);
      double shape = std::nan("");
      if (kind == IcKind::Heaviside) {
        try {
          shape = shape_error(sim.final_field, sim.grid, reconstruct_profile(shoot(pr, cb->bracket_lo)));
        } catch (const Error&) {
          // vanished front or no profile: no shape comparison
        }
      }
      if (!snapshots_path.empty()) {
        std::ostringstream os;
        io::write_snapshots_csv(os, sim);
        io::write_file(snapshots_path, os.str());
      }
      if (!trace_path.empty()) {
        std::ostringstream os;
        io::write_trace_csv(os, sim.trace);
        io::write_file(trace_path, os.str());
      }
      json j = io::simulation_summary(sim, shape);
      if (cb) j["cbar"] = cb->value;
      emit(out, out_path, dump(j));
    } else if (*verify) {
      std::vector<catalog::ExplicitCase> cases;
      if (case_id.empty()) {
        cases = catalog::list_cases();
      } else {
        cases.push_back(catalog::find_case(case_id));
      }
      std::vector<io::ExplicitRow> rows;
      for (const auto& ec : cases) {
        io::ExplicitRow r;
        r.case_id = ec.id;
        if (ec.kind == catalog::CaseKind::Trajectory) {
          r.residual = catalog::residual_trajectory(ec);
          if (ec.wave) r.residual = std::max(r.residual, catalog::residual_wave(ec));
          r.shoot_deviation = ec.valid ? catalog::shoot_deviation(ec) : std::nan("");
        } else {
          r.residual = std::nan("");
          r.sign_ok = catalog::sign_check(ec);
          r.shoot_deviation = std::nan("");
        }
        rows.push_back(r);
      }
      std::ostringstream os;
      io::write_explicit_csv(os, rows);
      emit(out, out_path, os.str());
    } else if (*selfmap) {
      const ModelParams src = validate_params(n1, p1, q1, k1);
      const SelfMapPair pair = map_params(src, n2);
      json j = {{"source", io::to_json(pair.source)}, {"target", io::to_json(pair.target)}, {"n2", n2}};
      if (check_kstar) {
        const InvarianceReport rep = kstar_invariance(n1, p1, q1, n2, bo);
        j["kstar_source"] = io::to_json(rep.source_kstar);
        j["kstar_target"] = io::to_json(rep.target_kstar);
        j["discrepancy"] = rep.discrepancy;
      }
      out << dump(j);
    } else {
      out << app.help();
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_validation_error(e.code()) ? kValidation : kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace frontlab::cli
