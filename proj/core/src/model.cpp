#include "frontlab/model.hpp"

#include <cmath>
#include <sstream>

#include "frontlab/error.hpp"

namespace frontlab {

ModelParams validate_params(double n, double p, double q, double k) {
  if (!std::isfinite(n) || !std::isfinite(p) || !std::isfinite(q) || !std::isfinite(k)) {
    throw Error(ErrorCode::NonFinite, "all of n, p, q, k must be finite");
  }
  if (k <= 0.0) {
    std::ostringstream msg;
    msg << "k = " << k << " must be positive; for k < 0 solve with |k| and reflect x -> -x";
    throw Error(ErrorCode::NonPositiveK, msg.str());
  }
  if (q < 1.0) {
    throw Error(ErrorCode::QTooSmall, "q must satisfy q >= 1");
  }
  if (p <= q) {
    throw Error(ErrorCode::ExponentOrder, "p must be strictly greater than q");
  }
  if (n < 1.0) {
    throw Error(ErrorCode::NTooSmall, "n must satisfy n >= 1");
  }
  ModelParams params{n, p, q, k, n < 2.0};
  return params;
}

std::string_view to_string(P2Class cls) noexcept {
  switch (cls) {
    case P2Class::UnstableNode: return "UnstableNode";
    case P2Class::UnstableFocus: return "UnstableFocus";
    case P2Class::Center: return "Center";
    case P2Class::StableFocus: return "StableFocus";
    case P2Class::StableNode: return "StableNode";
  }
  return "Unknown";
}

EigenData p2_eigen(const ModelParams& params, double c) {
  EigenData out;
  const double trace = c - params.kn();
  const double det = params.p - params.q;
  out.discriminant = trace * trace - 4.0 * det;

  const double width = params.focus_half_width();
  if (c >= params.kn() + width) {
    out.p2_class = P2Class::UnstableNode;
  } else if (c > params.kn()) {
    out.p2_class = P2Class::UnstableFocus;
  } else if (c == params.kn()) {
    out.p2_class = P2Class::Center;
  } else if (c > params.kn() - width) {
    out.p2_class = P2Class::StableFocus;
  } else {
    out.p2_class = P2Class::StableNode;
  }

  if (out.discriminant >= 0.0) {
    // Large-magnitude root first, the other from the product p - q.
    const double root = std::sqrt(out.discriminant);
    if (trace < 0.0) {
      out.lambda_minus = 0.5 * (trace - root);
      out.lambda_plus = det / out.lambda_minus;
    } else if (trace > 0.0) {
      out.lambda_plus = 0.5 * (trace + root);
      out.lambda_minus = det / out.lambda_plus;
    } else {
      out.lambda_plus = 0.5 * root;
      out.lambda_minus = -0.5 * root;
    }
    out.imag_part = 0.0;
  } else {
    out.lambda_plus = 0.5 * trace;
    out.lambda_minus = 0.5 * trace;
    out.imag_part = 0.5 * std::sqrt(-out.discriminant);
  }
  out.e_plus = {1.0, out.lambda_plus};
  out.e_minus = {1.0, out.lambda_minus};
  return out;
}

double ctilde(const ModelParams& params) {
  return params.kn() + params.focus_half_width();
}

}  // namespace frontlab
