#include <doctest.h>

#include <cmath>
#include <random>

#include "frontlab/critical.hpp"
#include "frontlab/error.hpp"

using namespace frontlab;

namespace {

BisectionOptions with_tol(double tol) {
  BisectionOptions o;
  o.tol = tol;
  return o;
}

}  // namespace

TEST_CASE("cbar against closed forms") {
  const auto a = cbar(validate_params(3, 3, 1, 2), with_tol(1e-6));
  CHECK(std::abs(a.value - 1.5) < 1e-6);
  CHECK(a.bracket_hi - a.bracket_lo <= 1e-6);
  CHECK(is_direct(a.endpoint_classes.first));
  CHECK(a.endpoint_classes.second == ConnectionClass::Overshoot);

  const auto b = cbar(validate_params(3, 5, 3, 2), with_tol(1e-6));
  CHECK(std::abs(b.value - (6 + std::sqrt(24.0)) / 6) < 1e-6);

  const auto c = cbar(validate_params(3, 3, 1, 1), with_tol(1e-6));
  CHECK(std::abs(c.value) < 1e-6);
}

TEST_CASE("cbar_explicit") {
  CHECK(cbar_explicit(validate_params(3, 3, 1, 2)).value() == doctest::Approx(1.5));
  CHECK_FALSE(cbar_explicit(validate_params(3, 3, 1, 0.5)).has_value());
  CHECK(cbar_explicit(validate_params(4, 7, 4, 2)).value() == doctest::Approx((8 + std::sqrt(48.0)) / 8));
  CHECK_FALSE(cbar_explicit(validate_params(3, 4, 2, 2)).has_value());
}

TEST_CASE("cbar oracle agreement and velocity bracket on random draws") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 6; ++i) {
    const double n = 2 + 4 * U(rng);
    const double q = 1 + 2 * U(rng);
    const double p = q + 0.1 + 3 * U(rng);
    const double k = 0.2 + 3 * U(rng);
    const auto pr = validate_params(n, p, q, k);
    const auto r = cbar(pr);
    const double s = std::sqrt(p - q);
    CHECK(r.value >= -2 * s - 1e-8);
    CHECK(r.value <= pr.kn() - 2 * s + 1e-8);
    CHECK(r.bracket_hi - r.bracket_lo <= 1e-8);
  }
  for (double n : {2.5, 3.0, 4.0}) {
    for (double k : {1.2, 2.0}) {
      const auto curve0 = validate_params(n, n, 1, k);
      if (auto e = cbar_explicit(curve0)) CHECK(std::abs(cbar(curve0).value - *e) < 1e-7);
      const auto expl2 = validate_params(n, 2 * n - 1, n, k);
      if (auto e = cbar_explicit(expl2)) CHECK(std::abs(cbar(expl2).value - *e) < 1e-7);
    }
  }
}

TEST_CASE("kstar closed forms") {
  CHECK(kstar(3, 3, 1).value == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(kstar(3, 5, 1).value == doctest::Approx(4.0 / 3.0).epsilon(1e-7));
  CHECK(kstar(7, 13, 1).value == doctest::Approx(8.0 / 7.0).epsilon(1e-7));
  const auto r = kstar(2, 4, 3);
  CHECK(r.closed_form);
  CHECK(r.value == 1.0);
  CHECK(r.endpoint_classes.first == ConnectionClass::Overshoot);
  CHECK(is_direct(r.endpoint_classes.second));
}

TEST_CASE("sign law around kstar") {
  const double ks = kstar(4, 5, 2).value;
  CHECK(cbar(validate_params(4, 5, 2, ks * 0.9)).value < 0.0);
  CHECK(cbar(validate_params(4, 5, 2, ks * 1.1)).value > 0.0);
}

TEST_CASE("kstar inequalities on sampled exponents") {
  // k*(n, p, 1) < (n+1)/n for p in (1, 2n-1)
  for (double p : {2.0, 3.5}) CHECK(kstar(3, p, 1).value < 4.0 / 3.0);
  // k*(n, n, q) > 2 sqrt(n-q)/n for q in (1, n-1]
  for (double q : {1.5, 2.0}) CHECK(kstar(3, 3, q).value > 2 * std::sqrt(3 - q) / 3);
  // k*(n, n + (q-1)/2, q) = 2/sqrt(2(q+1)) for n > q + 1
  for (double q : {1.5, 2.0}) {
    const double n = q + 1.5;
    CHECK(std::abs(kstar(n, n + (q - 1) / 2, q).value - 2 / std::sqrt(2 * (q + 1))) < 1e-7);
  }
}

TEST_CASE("tolerance below 1e-10 is rejected") {
  CHECK_THROWS_AS(cbar(validate_params(3, 3, 1, 2), with_tol(1e-12)), Error);
  CHECK_THROWS_AS(kstar(3, 3, 1, with_tol(0.0)), Error);
}
