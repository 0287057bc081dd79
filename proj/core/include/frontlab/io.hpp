#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "frontlab/critical.hpp"
#include "frontlab/model.hpp"
#include "frontlab/pde.hpp"
#include "frontlab/phaseplane.hpp"

namespace frontlab::io {

// CSV writers use 17 significant digits so values round-trip.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);   // xi,X,Y
void write_profile_csv(std::ostream& os, const ProfileTable& table);   // xi,f
void write_snapshots_csv(std::ostream& os, const Simulation& sim);     // t,x,u
void write_trace_csv(std::ostream& os, const FrontTrace& trace);       // t,x_front

struct ExplicitRow {
  std::string case_id;
  double residual = 0.0;
  bool sign_ok = true;
  double shoot_deviation = 0.0;
};
void write_explicit_csv(std::ostream& os, const std::vector<ExplicitRow>& rows);

nlohmann::json to_json(const ModelParams& params);
nlohmann::json to_json(const EigenData& eigen);
nlohmann::json to_json(const CriticalResult& result);
nlohmann::json simulation_summary(const Simulation& sim, double shape_error_final);

/// Writes `text` to `path`, throwing IoFailure on error.
void write_file(const std::string& path, const std::string& text);

}  // namespace frontlab::io
