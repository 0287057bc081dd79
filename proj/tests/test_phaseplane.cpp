#include <doctest.h>

#include <cmath>
#include <random>
#include <tuple>

#include "frontlab/critical.hpp"
#include "frontlab/error.hpp"
#include "frontlab/numdiff.hpp"
#include "frontlab/phaseplane.hpp"

using namespace frontlab;

TEST_CASE("vector_field examples") {
  const auto pr = validate_params(3, 3, 1, 1);
  auto [a, b] = vector_field(pr, 0.0, {1.0, 0.0});
  CHECK(a == 0.0);
  CHECK(b == doctest::Approx(0.0));
  std::tie(a, b) = vector_field(pr, 0.0, {0.5, 0.375});
  CHECK(a == 0.375);
  CHECK(b == doctest::Approx(0.09375).epsilon(1e-14));
  std::tie(a, b) = vector_field(validate_params(4, 6.5, 2, 3), -1.7, {0.0, 0.0});
  CHECK(a == 0.0);
  CHECK(b == 0.0);
}

TEST_CASE("launch_state follows the local expansions at P1") {
  auto l = launch_state(validate_params(3, 5, 1, 1), 2.0, 1e-6);
  CHECK(l.X == 1e-6);
  CHECK(l.Y == doctest::Approx((1 + std::sqrt(2.0)) * 1e-6).epsilon(1e-12));
  l = launch_state(validate_params(3, 3, 1, 1), 0.0, 1e-6);
  CHECK(l.Y == doctest::Approx(1e-6).epsilon(1e-12));
  l = launch_state(validate_params(2, 4, 3, 1), 0.0, 1e-4);
  CHECK(l.Y == doctest::Approx((std::sqrt(12.0) - 2) / 4 * 1e-8).epsilon(1e-10));
  // q > 1, c > 0: unstable eigendirection (1, c)
  l = launch_state(validate_params(3, 5, 3, 2), 0.7, 1e-6);
  CHECK(l.Y == doctest::Approx(0.7e-6));
  // q > 1, c < 0: center-manifold balance
  l = launch_state(validate_params(3, 5, 3, 2), -0.5, 1e-3);
  CHECK(l.Y == doctest::Approx(1e-9 / 0.5));
  // q > 1, c = 0, n > (q+1)/2
  l = launch_state(validate_params(3, 5, 3, 2), 0.0, 1e-4);
  CHECK(l.Y == doctest::Approx(std::sqrt(0.5) * 1e-8));
  // q > 1, c = 0, n < (q+1)/2
  l = launch_state(validate_params(2, 6, 4, 2), 0.0, 1e-3);
  CHECK(l.Y == doctest::Approx(std::pow(1e-3, 3.0) / 4.0));

  CHECK_THROWS_AS(launch_state(validate_params(3, 3, 1, 1), 0.0, 0.0), Error);
  CHECK_THROWS_AS(launch_state(validate_params(3, 3, 1, 1), 0.0, 2e-3), Error);
}

TEST_CASE("shoot classifies the Figure-1 parameter sets at c = 0") {
  const auto spread = shoot(validate_params(3, 3, 1, 2), 0.0);
  CHECK(spread.connection == ConnectionClass::DirectLeading);
  CHECK_FALSE(spread.x0_crossing.has_value());

  const auto vanish = shoot(validate_params(3, 3, 1, 0.5), 0.0);
  CHECK(vanish.connection == ConnectionClass::Overshoot);
  REQUIRE(vanish.x0_crossing.has_value());
  CHECK(*vanish.x0_crossing > 1.0);

  const auto border = shoot(validate_params(3, 3, 1, 1), 0.0);
  CHECK(is_direct(border.connection));
  REQUIRE(border.terminal_slope.has_value());
  CHECK(*border.terminal_slope == doctest::Approx(-2.0).epsilon(1e-4));
}

TEST_CASE("CURVE0 terminal slope equals lambda_minus at the critical velocity") {
  const auto pr = validate_params(3, 3, 1, 2);
  const auto tr = shoot(pr, 1.5);
  CHECK(tr.connection == ConnectionClass::DirectCritical);
  const auto s = tr.extrapolated_approach_slope();
  REQUIRE(s.has_value());
  CHECK(std::abs(*s - p2_eigen(pr, 1.5).lambda_minus) < 1e-6);
}

TEST_CASE("trajectory invariants: X increases while Y > 0, X stays nonnegative") {
  for (double c : {-1.0, 0.0, 1.0, 2.0}) {
    const auto tr = shoot(validate_params(3, 3, 1, 2), c);
    for (std::size_t i = 1; i < tr.points.size(); ++i) {
      CHECK(tr.points[i].X >= 0.0);
      if (tr.points[i - 1].Y > 0.0 && tr.points[i].Y > 0.0) CHECK(tr.points[i].X > tr.points[i - 1].X);
    }
    if (tr.connection == ConnectionClass::Overshoot) CHECK(*tr.x0_crossing > 1.0);
  }
}

TEST_CASE("velocity monotonicity of the graphs Y_c(X)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int draw = 0; draw < 5; ++draw) {
    const double n = 2 + 3 * U(rng);
    const double q = 1 + 2 * U(rng);
    const double p = q + 0.2 + 2 * U(rng);
    const double k = 0.3 + 2 * U(rng);
    const auto pr = validate_params(n, p, q, k);
    const double c1 = -1 + 2 * U(rng);
    const double c2 = c1 + 0.25 + U(rng);
    const auto a = shoot(pr, c1);
    const auto b = shoot(pr, c2);
    for (double X = 0.05; X < 0.95; X += 0.05) {
      const auto ya = y_at(a, X);
      const auto yb = y_at(b, X);
      if (ya && yb) CHECK(*ya < *yb);
    }
  }
}

TEST_CASE("halving delta does not change the classification away from cbar") {
  const auto pr = validate_params(3, 5, 3, 2);
  const double cb = cbar(pr).value;
  for (double c : {cb - 0.5, cb - 0.05, cb + 0.05, cb + 0.5}) {
    ShootOptions a;
    a.sample_dxi = 0.0;
    ShootOptions b = a;
    b.delta = 5e-7;
    CHECK(is_direct(shoot(pr, c, a).connection) == is_direct(shoot(pr, c, b).connection));
  }
}

TEST_CASE("reconstructed profile matches the CURVE0 closed form") {
  const auto pr = validate_params(3, 3, 1, 2);
  const auto table = reconstruct_profile(shoot(pr, cbar(pr).bracket_lo));
  CHECK(table.value_at(0.0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(table.half_level_xi() == doctest::Approx(0.0).epsilon(1e-9));
  // f = (1 + C e^{-4 xi})^{-1/2}, f(0) = 1/2 gives C = 3
  double err = 0.0;
  for (const auto& s : table.samples) {
    const double f = 1.0 / std::sqrt(1.0 + 3.0 * std::exp(-4.0 * s.xi));
    err = std::max(err, std::abs(s.f - f));
  }
  CHECK(err < 1e-6);
  CHECK(table.samples.front().f < 1e-6);
  CHECK(table.samples.back().f > 1 - 1e-6);
  for (std::size_t i = 1; i < table.samples.size(); ++i) CHECK(table.samples[i].f > table.samples[i - 1].f);
}

TEST_CASE("reconstructed profile matches the EXPL2 closed form") {
  const auto pr = validate_params(3, 5, 3, 2);
  const double c1 = (6.0 + std::sqrt(24.0)) / 6.0;
  const auto table = reconstruct_profile(shoot(pr, cbar(pr).bracket_lo));
  // f = (1 + C e^{-c1 (n-1) xi})^{-1/(n-1)}, f(0) = 1/2 gives C = 3
  double err = 0.0;
  for (const auto& s : table.samples) {
    const double f = 1.0 / std::sqrt(1.0 + 3.0 * std::exp(-2.0 * c1 * s.xi));
    err = std::max(err, std::abs(s.f - f));
  }
  CHECK(err < 1e-6);
}

TEST_CASE("profile residual of the traveling-wave ODE") {
  struct Case {
    double n, p, q, k, dc;
  };
  for (const Case cs : {Case{3, 3, 1, 2, 0.5}, Case{3, 5, 3, 2, 0.5}, Case{4, 6, 2, 1.5, 0.3}, Case{3, 3, 1, 2, 0.0}}) {
    const auto pr = validate_params(cs.n, cs.p, cs.q, cs.k);
    const auto cb = cbar(pr);
    const double c = cs.dc > 0.0 ? cb.value - cs.dc : cb.bracket_lo;
    const auto table = reconstruct_profile(shoot(pr, c));
    std::vector<double> xi, f;
    for (const auto& s : table.samples) {
      xi.push_back(s.xi);
      f.push_back(s.f);
    }
    const auto d1 = derivative(xi, f, 1, 7);
    const auto d2 = derivative(xi, f, 2, 7);
    const double lo = xi.front() + 0.1 * (xi.back() - xi.front());
    const double hi = xi.back() - 0.1 * (xi.back() - xi.front());
    double res = 0.0;
    for (std::size_t i = 3; i + 3 < xi.size(); ++i) {
      if (xi[i] < lo || xi[i] > hi || xi[i] < -60 || xi[i] > 60) continue;
      const double rhs = c * d1[i] - pr.kn() * std::pow(f[i], cs.n - 1) * d1[i] - std::pow(f[i], cs.p) +
                         std::pow(f[i], cs.q);
      res = std::max(res, std::abs(d2[i] - rhs));
    }
    CHECK(res < 1e-5);
  }
}

TEST_CASE("reconstruct_profile rejects non-connections") {
  const auto tr = shoot(validate_params(3, 3, 1, 0.5), 0.0);
  CHECK_THROWS_WITH_AS(reconstruct_profile(tr), doctest::Contains("Overshoot"), Error);
}

TEST_CASE("flow_sign_across on the basic curve and the eps curve") {
  const auto pr = validate_params(3, 3, 1, 2);
  auto g = [](double X) { return X - X * X * X; };
  auto dg = [](double X) { return 1 - 3 * X * X; };
  CHECK(flow_sign_across(pr, 0.0, g(0.5), dg(0.5), 0.5) > 0.0);
  CHECK(flow_sign_across(pr, 0.0, g(0.0), dg(0.0), 0.0) == 0.0);
  CHECK(flow_sign_across(pr, 0.0, g(1.0), dg(1.0), 1.0) == doctest::Approx(0.0));
}

TEST_CASE("stable branch reaches X = 0 below cbar") {
  const auto pr = validate_params(3, 3, 1, 2);
  const auto br = stable_branch(pr, 1.0);
  REQUIRE_FALSE(br.events.empty());
  CHECK(br.events.back().kind == EventKind::CrossedYAxis);
  CHECK(br.points.front().X == 0.0);
  CHECK(br.points.front().Y > 0.0);
  CHECK(br.points.back().X == doctest::Approx(1 - 1e-6));
  CHECK_THROWS_AS(stable_branch(pr, 5.0), Error);
}
