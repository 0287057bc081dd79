#include "frontlab/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "frontlab/error.hpp"
#include "frontlab/phaseplane.hpp"

namespace frontlab::catalog {

std::string_view to_string(CaseKind kind) noexcept {
  switch (kind) {
    case CaseKind::Trajectory: return "Trajectory";
    case CaseKind::InvariantCurveInward: return "InvariantCurveInward";
    case CaseKind::InvariantCurveOutward: return "InvariantCurveOutward";
  }
  return "?";
}

double WaveForm::value(double xi) const {
  const double g = 1.0 + C * std::exp(-rate * xi);
  return std::pow(g, -exponent);
}

double WaveForm::first(double xi) const {
  const double e = C * std::exp(-rate * xi);
  const double g = 1.0 + e;
  return exponent * rate * e * std::pow(g, -exponent - 1.0);
}

double WaveForm::second(double xi) const {
  const double e = C * std::exp(-rate * xi);
  const double g = 1.0 + e;
  return -exponent * rate * rate * e * std::pow(g, -exponent - 2.0) * (g - (exponent + 1.0) * e);
}

namespace {

/// Y = A (X^a - X^b) with its derivative.
void set_two_term(ExplicitCase& ec, double A, double a, double b) {
  ec.curve = [=](double X) { return A * (power(X, a) - power(X, b)); };
  ec.slope = [=](double X) { return A * (a * power(X, a - 1.0) - b * power(X, b - 1.0)); };
}

WaveForm logistic(double n, double rate) { return {1.0, rate, 1.0 / (n - 1.0)}; }

}  // namespace

ExplicitCase basic(double n) {
  ExplicitCase ec;
  ec.id = "BASIC";
  ec.params = validate_params(n, n, 1.0, 1.0);
  ec.c = 0.0;
  ec.kind = CaseKind::Trajectory;
  set_two_term(ec, 1.0, 1.0, n);
  ec.valid = n > 2.0;
  ec.validity = "n > 2 (slope -(n-1) at P2 is lambda_-)";
  ec.wave = logistic(n, n - 1.0);
  return ec;
}

ExplicitCase basic_inward(double n, double q, double k) {
  ExplicitCase ec;
  ec.id = "BASIC_INWARD";
  ec.params = validate_params(n, n, q, k);
  ec.c = 0.0;
  ec.kind = CaseKind::InvariantCurveInward;
  set_two_term(ec, 1.0, 1.0, n);
  ec.valid = k > 1.0;
  ec.validity = "k > 1";
  ec.sign_function = [=](double X) {
    return (k - 1.0) * n * power(X, n - 1.0) * (X - power(X, n)) + X - power(X, q);
  };
  return ec;
}

ExplicitCase curve0(double n, double k) {
  ExplicitCase ec;
  ec.id = "CURVE0";
  ec.params = validate_params(n, n, 1.0, k);
  ec.c = (k * k - 1.0) / k;
  ec.kind = CaseKind::Trajectory;
  set_two_term(ec, k, 1.0, n);
  ec.valid = k * k * (n - 1.0) > 1.0;
  ec.validity = "k^2 (n-1) > 1";
  ec.wave = logistic(n, k * (n - 1.0));
  return ec;
}

ExplicitCase expl2(double n, double k, int branch) {
  if (branch != 1 && branch != 2) throw Error(ErrorCode::InvalidArgument, "EXPL2 branch must be 1 or 2");
  if (!(k > 2.0 / std::sqrt(n))) {
    throw Error(ErrorCode::InvalidArgument, "EXPL2 requires k > 2/sqrt(n)");
  }
  ExplicitCase ec;
  ec.id = branch == 1 ? "EXPL2_C1" : "EXPL2_C2";
  ec.params = validate_params(n, 2.0 * n - 1.0, n, k);
  const double kn = k * n;
  const double root = std::sqrt(kn * kn - 4.0 * n);
  ec.c = (kn + (branch == 1 ? root : -root)) / (2.0 * n);
  ec.kind = CaseKind::Trajectory;
  set_two_term(ec, ec.c, 1.0, n);
  if (branch == 1) {
    ec.valid = k > (2.0 * n - 1.0) / (n * std::sqrt(n - 1.0));
    ec.validity = "k > (2n-1)/(n sqrt(n-1))";
  } else {
    ec.valid = false;
    ec.validity = "trajectory only; never critical";
  }
  ec.wave = logistic(n, ec.c * (n - 1.0));
  return ec;
}

ExplicitCase curve1(double n) {
  ExplicitCase ec;
  ec.id = "CURVE1";
  ec.params = validate_params(n, 2.0 * n - 1.0, 1.0, (n + 1.0) / n);
  ec.c = 0.0;
  ec.kind = CaseKind::Trajectory;
  set_two_term(ec, 1.0, 1.0, n);
  // lambda_-(0) = -max(n - 1, 2); the slope 1 - n is lambda_- only for n >= 3
  ec.valid = n >= 3.0;
  ec.validity = "n >= 3";
  ec.wave = logistic(n, n - 1.0);
  return ec;
}

namespace {

ExplicitCase curve3(const std::string& id, double n, double p, double q, double k) {
  ExplicitCase ec;
  ec.id = id;
  ec.params = validate_params(n, p, q, k);
  ec.c = 0.0;
  ec.kind = CaseKind::Trajectory;
  set_two_term(ec, std::sqrt(2.0 / (q + 1.0)), 0.5 * (q + 1.0), n);
  if (q == 1.0) ec.wave = logistic(n, n - 1.0);
  return ec;
}

}  // namespace

ExplicitCase curve3_estimate3(double n, double q) {
  const double k = (2.0 * n + q + 1.0) / (n * std::sqrt(2.0 * (q + 1.0)));
  ExplicitCase ec = curve3("CURVE3_EST3", n, 2.0 * n - 1.0, q, k);
  ec.valid = n > 1.5 * (q + 1.0);
  ec.validity = "n > 3(q+1)/2";
  return ec;
}

ExplicitCase curve3_estimate4(double n, double q) {
  const double k = 2.0 / std::sqrt(2.0 * (q + 1.0));
  ExplicitCase ec = curve3("CURVE3_EST4", n, n + 0.5 * (q - 1.0), q, k);
  ec.valid = n > q + 1.0;
  ec.validity = "n > q + 1";
  return ec;
}

ExplicitCase complex_curve(double n, double p, double q, double A) {
  if (!(A > 0.0)) throw Error(ErrorCode::InvalidArgument, "COMPLEX requires A > 0");
  ExplicitCase ec;
  ec.id = "COMPLEX";
  ec.params = validate_params(n, p, q, (A * A * (p - q) + 1.0) / (A * n));
  ec.c = 0.0;
  ec.kind = CaseKind::InvariantCurveInward;
  set_two_term(ec, A, q + 1.0 - n, p + 1.0 - n);
  ec.valid = n <= 0.5 * (q + 1.0);
  ec.validity = "n <= (q+1)/2";
  ec.sign_function = [=](double X) {
    return p - q + (q + 1.0 - n) * power(X, q + 1.0 - 2.0 * n) -
           (p + 1.0 - n) * power(X, p + 1.0 - 2.0 * n);
  };
  return ec;
}

ExplicitCase eps_curve(double n, double q) {
  const double eps = q * (q - 1.0) / (n * (n - 1.0) - q * (q - 1.0));
  const double k = 2.0 * std::sqrt(n - q) / n;
  ExplicitCase ec;
  ec.id = "EPSCURVE";
  ec.params = validate_params(n, n, q, k);
  ec.c = 0.0;
  ec.kind = CaseKind::InvariantCurveOutward;
  set_two_term(ec, k * (1.0 + eps), q, n);
  ec.valid = q > 1.0 && q <= n - 1.0;
  ec.validity = "1 < q <= n - 1";
  ec.sign_function = [=](double X) {
    return (1.0 + eps) * (1.0 + eps) * q * power(X, q - 1.0) - eps * (1.0 + eps) * n * power(X, n - 1.0) -
           n * n / (4.0 * (n - q));
  };
  return ec;
}

std::vector<ExplicitCase> list_cases() {
  return {
      basic(3.0),
      curve0(3.0, 2.0),
      expl2(3.0, 2.0, 1),
      expl2(3.0, 2.0, 2),
      curve1(3.0),
      curve3_estimate3(7.0, 1.0),
      curve3_estimate4(5.0, 3.0),
      complex_curve(2.0, 4.0, 3.0, 1.0),
      eps_curve(3.0, 2.0),
      basic_inward(3.0, 2.0, 1.5),
  };
}

ExplicitCase find_case(const std::string& id) {
  auto upper = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::toupper(ch); });
    return s;
  };
  const std::string key = upper(id);
  for (auto& ec : list_cases()) {
    if (ec.id == key) return ec;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown explicit case '" + id + "'");
}

double residual_trajectory(const ExplicitCase& ec, int n_samples) {
  if (ec.kind != CaseKind::Trajectory) {
    throw Error(ErrorCode::WrongKind, ec.id + " is an invariant curve, not a trajectory");
  }
  if (n_samples < 10) throw Error(ErrorCode::InvalidArgument, "n_samples must be >= 10");
  const ModelParams& pr = ec.params;
  double worst = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double X = 0.05 + 0.9 * i / (n_samples - 1);
    const double Y = ec.curve(X);
    const double rhs = ec.c * Y - pr.kn() * power(X, pr.n - 1.0) * Y - power(X, pr.p) + power(X, pr.q);
    worst = std::max(worst, std::abs(Y * ec.slope(X) - rhs));
  }
  return worst;
}

double shoot_deviation(const ExplicitCase& ec, int n_samples) {
  if (ec.kind != CaseKind::Trajectory) {
    throw Error(ErrorCode::WrongKind, ec.id + " is an invariant curve, not a trajectory");
  }
  if (n_samples < 10) throw Error(ErrorCode::InvalidArgument, "n_samples must be >= 10");
  const Trajectory tr = shoot(ec.params, ec.c);
  double worst = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double X = 0.05 + 0.9 * i / (n_samples - 1);
    const auto y = y_at(tr, X);
    if (!y) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::abs(*y - ec.curve(X)));
  }
  return worst;
}

double residual_wave(const ExplicitCase& ec, const WaveForm& w, int n_samples) {
  if (n_samples < 10) throw Error(ErrorCode::InvalidArgument, "n_samples must be >= 10");
  const ModelParams& pr = ec.params;
  double worst = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double xi = -20.0 + 40.0 * i / (n_samples - 1);
    const double f = w.value(xi);
    const double f1 = w.first(xi);
    const double rhs = ec.c * f1 - pr.kn() * power(f, pr.n - 1.0) * f1 - power(f, pr.p) + power(f, pr.q);
    worst = std::max(worst, std::abs(w.second(xi) - rhs));
  }
  return worst;
}

double residual_wave(const ExplicitCase& ec, int n_samples) {
  if (!ec.wave) throw Error(ErrorCode::NoWaveForm, ec.id + " has no closed-form wave");
  return residual_wave(ec, *ec.wave, n_samples);
}

bool sign_check(const ExplicitCase& ec, int n_samples) {
  if (ec.kind == CaseKind::Trajectory || !ec.sign_function) {
    throw Error(ErrorCode::WrongKind, ec.id + " is a trajectory, not an invariant curve");
  }
  if (n_samples < 10) throw Error(ErrorCode::InvalidArgument, "n_samples must be >= 10");
  const bool inward = ec.kind == CaseKind::InvariantCurveInward;
  for (int i = 1; i < n_samples - 1; ++i) {
    const double X = static_cast<double>(i) / (n_samples - 1);
    const double v = ec.sign_function(X);
    if (inward ? v < 0.0 : v > 0.0) return false;
  }
  return true;
}

}  // namespace frontlab::catalog
