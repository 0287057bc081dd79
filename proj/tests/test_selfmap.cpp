#include <doctest.h>

#include <cmath>
#include <tuple>

#include "frontlab/error.hpp"
#include "frontlab/numdiff.hpp"
#include "frontlab/selfmap.hpp"

using namespace frontlab;

TEST_CASE("map_params examples") {
  const auto pair = map_params(validate_params(1, 2, 1, 2), 2);
  CHECK(pair.target.n == 2);
  CHECK(pair.target.p == doctest::Approx(5.0));
  CHECK(pair.target.q == doctest::Approx(3.0));
  CHECK(pair.target.k == doctest::Approx(std::sqrt(2.0)));

  const auto src = validate_params(3.3, 4.1, 1.7, 0.9);
  const auto id = map_params(src, 3.3);
  CHECK(id.target.n == src.n);
  CHECK(id.target.p == src.p);
  CHECK(id.target.q == src.q);
  CHECK(id.target.k == src.k);

  try {
    map_params(validate_params(3, 5, 1, 1), 1);
    FAIL("expected TargetOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TargetOutOfRange);
  }
}

TEST_CASE("map composition round-trips") {
  const auto src = validate_params(3, 4.5, 2, 1.3);
  const auto there = map_params(src, 5.5).target;
  const auto back = map_params(there, 3).target;
  CHECK(std::abs(back.p - src.p) < 1e-14);
  CHECK(std::abs(back.q - src.q) < 1e-14);
  CHECK(std::abs(back.k - src.k) < 1e-14);
}

TEST_CASE("transformed-system coefficients are map invariants") {
  const auto src = validate_params(3, 3, 1, 2);
  const auto a = transformed_coefficients(src);
  CHECK(a.a_u == doctest::Approx(2.0));
  CHECK(a.a_w == doctest::Approx(6.0));
  CHECK(a.e == doctest::Approx(1.0));
  for (double n2 : {1.5, 2.0, 5.0}) {
    const auto b = transformed_coefficients(map_params_unchecked(src, n2));
    CHECK(std::abs(b.a_u - a.a_u) < 1e-14);
    CHECK(std::abs(b.a_w - a.a_w) < 1e-14);
    CHECK(std::abs(b.e - a.e) < 1e-14);
  }
}

TEST_CASE("transform_point") {
  auto [U, W] = transform_point(validate_params(3, 3, 1, 1), {1.0, 0.7});
  CHECK(U == 1.0);
  CHECK(W == doctest::Approx(0.7));
  std::tie(U, W) = transform_point(validate_params(3, 3, 1, 1), {0.25, 0.1});
  CHECK(U == doctest::Approx(0.0625));
  CHECK(W == doctest::Approx(0.4));
  CHECK_THROWS_AS(transform_point(validate_params(3, 3, 1, 1), {0.0, 0.1}), Error);

  // the c = 0 launch expansion maps to W -> 1 at the origin
  const auto pr = validate_params(3, 5, 3, 2);
  const auto tr = shoot(pr, 0.0);
  const auto& first = tr.points.front();
  CHECK(transform_point(pr, {first.X, first.Y}).second == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("transformed residual") {
  const auto pr = validate_params(3, 3, 1, 2);
  const auto tr = shoot(pr, 0.0);
  const double mapped = transformed_residual(pr, tr, 2.0);
  CHECK(mapped < 1e-4);
  CHECK(transformed_residual(pr, tr, 3.0) == transformed_residual_with(pr, tr, transformed_coefficients(pr)));

  auto wrong = map_params_unchecked(pr, 2.0);
  wrong.k = pr.k;
  CHECK(transformed_residual_with(pr, tr, transformed_coefficients(wrong)) > 1e-2);

  CHECK_THROWS_AS(transformed_residual(pr, shoot(pr, 1.0), 2.0), Error);

  const auto q3 = validate_params(3, 5, 3, 2);
  CHECK(transformed_residual(q3, shoot(q3, 0.0), 4.0) < 1e-4);
}

TEST_CASE("kstar sqrt(n) invariance") {
  const auto r = kstar_invariance(1, 2, 1, 2);
  CHECK(r.source_kstar.value == doctest::Approx(2.0));
  CHECK(r.target_kstar.value == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.discrepancy < 1e-7);

  const auto s = kstar_invariance(1, 3, 1, 2);
  CHECK(s.source_kstar.value == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(s.target_kstar.value == doctest::Approx(2.0));

  CHECK(kstar_invariance(3, 3, 1, 3).discrepancy == 0.0);

  // bisected (non closed-form) orbit points
  const double base = kstar(3, 3, 1).value * std::sqrt(3.0);
  for (double n2 : {4.0, 5.0}) {
    const auto t = map_params(validate_params(3, 3, 1, 1), n2).target;
    CHECK(std::abs(kstar(t.n, t.p, t.q).value * std::sqrt(n2) - base) < 1e-7);
  }
}

TEST_CASE("finite-difference weights") {
  const auto w = fd_weights(0.0, {-2, -1, 0, 1, 2}, 2);
  CHECK(w[1][0] == doctest::Approx(1.0 / 12));
  CHECK(w[1][1] == doctest::Approx(-2.0 / 3));
  CHECK(w[2][2] == doctest::Approx(-2.5));
  std::vector<double> t, y;
  for (int i = 0; i < 40; ++i) {
    const double x = 0.02 * i + 0.0005 * i * i;
    t.push_back(x);
    y.push_back(std::sin(x));
  }
  const auto d = derivative(t, y, 1);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(d[i] == doctest::Approx(std::cos(t[i])).epsilon(1e-3));
}
