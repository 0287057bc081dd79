#include <doctest.h>

#include <cmath>
#include <random>

#include "frontlab/error.hpp"
#include "frontlab/model.hpp"

using namespace frontlab;

namespace {

ErrorCode code_of(double n, double p, double q, double k) {
  try {
    validate_params(n, p, q, k);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a validation error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("validate_params accepts the main range and tags the reference range") {
  const auto a = validate_params(3, 3, 1, 2);
  CHECK(a.n == 3);
  CHECK_FALSE(a.reference_range);
  const auto b = validate_params(1, 2, 1, 3);
  CHECK(b.reference_range);
  CHECK(validate_params(2.5, 3.7, 1.3, 0.2).kn() == doctest::Approx(0.5));
}

TEST_CASE("validate_params rejections") {
  CHECK(code_of(3, 1, 1, 1) == ErrorCode::ExponentOrder);
  CHECK(code_of(3, 3, 0.5, 1) == ErrorCode::QTooSmall);
  CHECK(code_of(0.5, 3, 1, 1) == ErrorCode::NTooSmall);
  CHECK(code_of(3, 3, 1, 0) == ErrorCode::NonPositiveK);
  CHECK(code_of(3, 3, 1, -2) == ErrorCode::NonPositiveK);
  CHECK(code_of(NAN, 3, 1, 1) == ErrorCode::NonFinite);
  CHECK(is_validation_error(ErrorCode::NonPositiveK));
  CHECK_FALSE(is_validation_error(ErrorCode::IntegrationFailure));
  try {
    validate_params(3, 3, 1, -1);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("reflect") != std::string::npos);
  }
}

TEST_CASE("p2_eigen closed-form examples") {
  const auto pr = validate_params(3, 3, 1, 2);
  const auto e = p2_eigen(pr, 0.0);
  // c - kn = -6, disc = 36 - 8 = 28
  CHECK(e.discriminant == doctest::Approx(28.0));
  CHECK(e.lambda_plus == doctest::Approx((-6.0 + std::sqrt(28.0)) / 2).epsilon(1e-12));
  CHECK(e.lambda_minus == doctest::Approx((-6.0 - std::sqrt(28.0)) / 2).epsilon(1e-12));
  CHECK(e.lambda_plus == doctest::Approx(-0.3542487).epsilon(1e-7));
  CHECK(e.lambda_minus == doctest::Approx(-5.6457513).epsilon(1e-7));
  CHECK(e.p2_class == P2Class::StableNode);
  CHECK(e.e_minus[1] == e.lambda_minus);

  const auto k1 = validate_params(3, 3, 1, 1);
  const auto c = p2_eigen(k1, 3.0);
  CHECK(c.lambda_plus == 0.0);
  CHECK(c.imag_part == doctest::Approx(std::sqrt(2.0)));
  CHECK(c.p2_class == P2Class::Center);

  const auto h = validate_params(3, 3, 1, 0.5);
  const double ct = ctilde(h);
  CHECK(ct == doctest::Approx(1.5 + 2 * std::sqrt(2.0)));
  const auto u = p2_eigen(h, ct);
  CHECK(u.p2_class == P2Class::UnstableNode);
  CHECK(u.lambda_plus == doctest::Approx(std::sqrt(2.0)).epsilon(1e-7));
  CHECK(u.lambda_minus == doctest::Approx(std::sqrt(2.0)).epsilon(1e-7));
}

TEST_CASE("ctilde") {
  CHECK(ctilde(validate_params(2, 5, 1, 1)) == doctest::Approx(6.0));
  ModelParams zero{3, 3, 1, 0, false};
  CHECK(ctilde(zero) == doctest::Approx(2 * std::sqrt(2.0)));
}

TEST_CASE("P2 class bands follow c through kn -/+ 2 sqrt(p - q)") {
  const auto pr = validate_params(3, 3, 1, 2);
  const double kn = pr.kn();
  const double w = 2 * std::sqrt(2.0);
  CHECK(p2_eigen(pr, kn - w - 0.1).p2_class == P2Class::StableNode);
  CHECK(p2_eigen(pr, kn - w + 0.1).p2_class == P2Class::StableFocus);
  CHECK(p2_eigen(pr, kn).p2_class == P2Class::Center);
  CHECK(p2_eigen(pr, kn + 0.1).p2_class == P2Class::UnstableFocus);
  CHECK(p2_eigen(pr, kn + w).p2_class == P2Class::UnstableNode);
  CHECK(p2_eigen(pr, kn + w + 1).p2_class == P2Class::UnstableNode);
}

TEST_CASE("eigen product and sum identities on random draws") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int real_draws = 0;
  while (real_draws < 1000) {
    const double n = 1 + 7 * U(rng);
    const double q = 1 + 4 * U(rng);
    const double p = q + 1e-3 + 5 * U(rng);
    const double k = 1e-3 + 5 * U(rng);
    const double c = -20 + 40 * U(rng);
    const auto e = p2_eigen(validate_params(n, p, q, k), c);
    if (!e.is_real()) {
      CHECK(e.imag_part > 0.0);
      continue;
    }
    ++real_draws;
    const double scale = std::max({std::abs(e.lambda_plus), std::abs(e.lambda_minus), 1.0});
    REQUIRE(e.lambda_minus <= e.lambda_plus);
    REQUIRE(std::abs(e.lambda_plus * e.lambda_minus - (p - q)) <= 1e-12 * (p - q));
    REQUIRE(std::abs(e.lambda_plus + e.lambda_minus - (c - k * n)) <= 1e-12 * scale);
  }
}

TEST_CASE("lambda_minus increases with c below the stable-node edge") {
  const auto pr = validate_params(4, 6, 2, 1.5);
  const double edge = pr.kn() - 2 * std::sqrt(2.0);
  double prev = -INFINITY;
  for (double c = edge - 20; c < edge; c += 0.37) {
    const double l = p2_eigen(pr, c).lambda_minus;
    CHECK(l > prev);
    prev = l;
  }
}

TEST_CASE("power helper") {
  CHECK(power(0.0, 0.0) == 1.0);
  CHECK(power(-1e-12, 2.5) == 0.0);
  CHECK(power(0.5, 3.0) == 0.125);
  CHECK(power(2.0, 1.5) == doctest::Approx(std::pow(2.0, 1.5)));
}
