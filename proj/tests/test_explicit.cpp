#include <doctest.h>

#include <cmath>

#include "frontlab/catalog.hpp"
#include "frontlab/critical.hpp"
#include "frontlab/error.hpp"

using namespace frontlab;
using namespace frontlab::catalog;

TEST_CASE("catalogue contents") {
  const auto cases = list_cases();
  CHECK(cases.size() >= 7);
  for (const auto& ec : cases) {
    CHECK(ec.curve(0.0) == doctest::Approx(0.0));
    CHECK(ec.curve(1.0) == doctest::Approx(0.0));
  }
  const auto c0 = curve0(3, 2);
  CHECK(c0.c == 1.5);
  CHECK(c0.curve(0.5) == doctest::Approx(2 * (0.5 - 0.125)));
  const auto c1 = curve1(3);
  CHECK(c1.params.p == 5);
  CHECK(c1.params.q == 1);
  CHECK(c1.params.k == doctest::Approx(4.0 / 3.0));
  CHECK(c1.c == 0.0);
  const auto cx = complex_curve(2, 4, 3, 1);
  CHECK(cx.params.k == doctest::Approx(1.0));
  CHECK(cx.curve(0.5) == doctest::Approx(0.25 - 0.125));
  CHECK(cx.kind == CaseKind::InvariantCurveInward);
  CHECK(find_case("curve0").id == "CURVE0");
  CHECK_THROWS_AS(find_case("nope"), Error);
}

TEST_CASE("trajectory residuals are roundoff") {
  CHECK(residual_trajectory(curve0(3, 2)) < 1e-12);
  CHECK(residual_trajectory(expl2(3, 2, 1)) < 1e-12);
  for (const auto& ec : list_cases()) {
    if (ec.kind != CaseKind::Trajectory) continue;
    CHECK(residual_trajectory(ec) < 1e-10);
    if (ec.wave) CHECK(residual_wave(ec) < 1e-10);
  }
}

TEST_CASE("negative controls") {
  auto b = basic(3);
  b.c = 1.0;
  CHECK(residual_trajectory(b) > 1e-2);
  const auto c0 = curve0(3, 2);
  WaveForm w = *c0.wave;
  w.exponent *= 1.01;
  CHECK(residual_wave(c0, w) > 1e-3);
  CHECK_THROWS_AS(residual_wave(complex_curve(2, 4, 3, 1)), Error);
  CHECK_THROWS_AS(residual_trajectory(eps_curve(3, 2)), Error);
  CHECK_THROWS_AS(sign_check(curve0(3, 2)), Error);
  CHECK_THROWS_AS(residual_trajectory(curve0(3, 2), 5), Error);
}

TEST_CASE("wave residuals") {
  CHECK(residual_wave(curve0(3, 2)) < 1e-12);
  CHECK(residual_wave(curve1(3)) < 1e-12);
}

TEST_CASE("sign checks of the invariant curves") {
  CHECK(sign_check(basic_inward(3, 2, 1.5)));
  CHECK(sign_check(complex_curve(2, 4, 3, 1)));
  CHECK(sign_check(eps_curve(3, 2)));
}

TEST_CASE("shooting reproduces the valid closed-form trajectories") {
  for (const auto& ec : list_cases()) {
    if (ec.kind != CaseKind::Trajectory || !ec.valid) continue;
    INFO(ec.id);
    CHECK(shoot_deviation(ec) < 1e-6);
  }
}

TEST_CASE("estimate4 at q = 1 agrees with k*(n, n, 1) = 1") {
  const auto e = curve3_estimate4(5, 1);
  CHECK(e.params.p == doctest::Approx(5.0));
  CHECK(e.params.k == doctest::Approx(1.0));
  CHECK(kstar(5, 5, 1).value == doctest::Approx(e.params.k).epsilon(1e-6));
}
