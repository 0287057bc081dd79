#include <doctest.h>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using frontlab::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cbar and kstar commands") {
  auto r = run({"cbar", "--n", "3", "--p", "3", "--q", "1", "--k", "2"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["value"].get<double>() - 1.5) < 1e-8);
  r = run({"kstar", "--n", "3", "--p", "3", "--q", "1"});
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["value"].get<double>() - 1.0) < 1e-8);
}

TEST_CASE("exit codes") {
  CHECK(run({"eigen", "--n", "3", "--p", "3", "--q", "1", "--k", "-1", "--c", "0"}).code == 2);
  CHECK(run({"eigen", "--n", "3", "--p", "1", "--q", "1", "--k", "1", "--c", "0"}).code == 2);
  CHECK(run({"cbar", "--n", "3"}).code == 2);
  CHECK(run({"unknown"}).code == 2);
  CHECK(run({"selfmap", "--n1", "3", "--p1", "5", "--q1", "1", "--k1", "1", "--n2", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("eigen, classify and selfmap JSON") {
  auto r = run({"eigen", "--n", "3", "--p", "3", "--q", "1", "--k", "2", "--c", "0"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["p2_class"] == "StableNode");
  r = run({"classify", "--n", "3", "--p", "3", "--q", "1", "--k", "0.5", "--c", "0"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["connection"] == "Overshoot");
  CHECK(j["x0"].get<double>() > 1.0);
  r = run({"selfmap", "--n1", "1", "--p1", "2", "--q1", "1", "--k1", "2", "--n2", "2", "--check-kstar"});
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["target"]["p"] == 5.0);
  CHECK(j["discrepancy"].get<double>() < 1e-7);
}

TEST_CASE("profile and verify-explicit CSV") {
  auto r = run({"profile", "--n", "3", "--p", "3", "--q", "1", "--k", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("xi,f\n", 0) == 0);
  r = run({"verify-explicit"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("case_id,residual,sign_ok,shoot_deviation\n", 0) == 0);
  CHECK(r.out.find("CURVE0,") != std::string::npos);
  CHECK(r.out.find(",false,") == std::string::npos);
  r = run({"verify-explicit", "--case", "curve1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("CURVE1") != std::string::npos);
}

TEST_CASE("simulate through a JSON config, deterministic output") {
  {
    std::ofstream cfg("sim_config.json");
    cfg << R"({"command": "simulate", "n": 3, "p": 3, "q": 1, "k": 0.5, "ic": "heaviside", "T": 40})";
  }
  const auto a = run({"--config", "sim_config.json", "--trace", "trace.csv"});
  REQUIRE(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["u_origin_final"].get<double>() < 0.1);
  for (const char* key : {"params", "ic", "fitted_speed", "fit_residual", "shape_error_final"}) {
    CHECK(j.contains(key));
  }
  std::ifstream trace("trace.csv");
  std::string header;
  std::getline(trace, header);
  CHECK(header == "t,x_front");

  const auto b = run({"--config", "sim_config.json"});
  CHECK(a.out == b.out);
  CHECK(run({"--config", "missing.json"}).code == 2);
}
