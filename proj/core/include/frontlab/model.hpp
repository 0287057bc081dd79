#pragma once

#include <array>
#include <cmath>
#include <string_view>

namespace frontlab {

/// Exponents and convection coefficient of u_t = u_xx + k (u^n)_x + u^p - u^q.
///
/// Exponents are real. The studied range is n >= 2, p > q >= 1, k > 0;
/// n in [1, 2) is accepted and flagged `reference_range` (it only appears as
/// the source side of the c = 0 parameter self-map).
struct ModelParams {
  double n = 2.0;
  double p = 2.0;
  double q = 1.0;
  double k = 1.0;
  bool reference_range = false;

  double kn() const noexcept { return k * n; }
  /// 2 sqrt(p - q): half-width of the focus band around c = kn at P2.
  double focus_half_width() const noexcept { return 2.0 * std::sqrt(p - q); }
};

/// Validates (n, p, q, k). Throws frontlab::Error naming the violated rule.
/// k <= 0 is rejected; negative convection is the reflection x -> -x of a
/// positive one and should be passed as |k| with the spatial axis flipped.
ModelParams validate_params(double n, double p, double q, double k);

enum class P2Class {
  UnstableNode,   // c >= kn + 2 sqrt(p - q)
  UnstableFocus,  // kn < c < kn + 2 sqrt(p - q)
  Center,         // c == kn, purely imaginary pair (Hopf point)
  StableFocus,    // kn - 2 sqrt(p - q) < c < kn
  StableNode,     // c <= kn - 2 sqrt(p - q)
};

std::string_view to_string(P2Class cls) noexcept;

/// Linearization of the traveling-wave system at P2 = (1, 0).
///
/// For a focus (discriminant < 0) `lambda_plus == lambda_minus` holds the
/// common real part and `imag_part` the modulus of the imaginary parts.
struct EigenData {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double imag_part = 0.0;
  double discriminant = 0.0;
  std::array<double, 2> e_plus{1.0, 0.0};
  std::array<double, 2> e_minus{1.0, 0.0};
  P2Class p2_class = P2Class::StableNode;

  bool is_real() const noexcept { return discriminant >= 0.0; }
  /// Distance between the two eigenvalues in the complex plane.
  double gap() const noexcept {
    return is_real() ? lambda_plus - lambda_minus : 2.0 * imag_part;
  }
};

EigenData p2_eigen(const ModelParams& params, double c);

/// kn + 2 sqrt(p - q): velocity selected by the anti-Heaviside front.
double ctilde(const ModelParams& params);

/// x^e for x >= 0 with an integer fast path; returns 0 for x <= 0 and e > 0.
inline double power(double x, double e) noexcept {
  if (x <= 0.0) return (e == 0.0) ? 1.0 : 0.0;
  if (e == 1.0) return x;
  if (e == 2.0) return x * x;
  if (e == 3.0) return x * x * x;
  if (e == 4.0) {
    const double x2 = x * x;
    return x2 * x2;
  }
  return std::pow(x, e);
}

}  // namespace frontlab
