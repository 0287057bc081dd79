#include "frontlab/critical.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "frontlab/error.hpp"
#include "frontlab/parallel.hpp"

namespace frontlab {

namespace {

void check_tol(double tol) {
  if (!(tol >= 1e-10) || !std::isfinite(tol)) {
    throw Error(ErrorCode::InvalidArgument, "tol must be >= 1e-10");
  }
}

ConnectionClass classify(const ModelParams& params, double c, const ShootOptions& opts) {
  const ConnectionClass cls = shoot(params, c, opts).connection;
  if (cls == ConnectionClass::Undetermined) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "shoot undetermined at (n, p, q, k) = (" << params.n << ", " << params.p << ", " << params.q
        << ", " << params.k << "), c = " << c;
    throw Error(ErrorCode::ShootUndetermined, msg.str());
  }
  return cls;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

/// Bisects [lo, hi] where pred(lo) != pred(hi) until hi - lo <= tol.
template <class Classify>
void bisect(CriticalResult& res, double lo, double hi, ConnectionClass cls_lo, ConnectionClass cls_hi,
            Classify classify_at, const BisectionOptions& opts) {
  const bool direct_lo = is_direct(cls_lo);
  while (hi - lo > opts.tol) {
    if (res.evaluations >= opts.max_evaluations) {
      throw Error(ErrorCode::BracketExhausted,
                  "evaluation budget of " + std::to_string(opts.max_evaluations) + " shoots exhausted");
    }
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const ConnectionClass cls = classify_at(mid);
    ++res.evaluations;
    if (is_direct(cls) == direct_lo) {
      lo = mid;
      cls_lo = cls;
    } else {
      hi = mid;
      cls_hi = cls;
    }
  }
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  res.value = 0.5 * (lo + hi);
  res.endpoint_classes = {cls_lo, cls_hi};
}

}  // namespace

CriticalResult cbar(const ModelParams& params, const BisectionOptions& opts) {
  check_tol(opts.tol);
  const double s = std::sqrt(params.p - params.q);
  const double lo = -2.0 * s;
  const double hi = params.kn() - 2.0 * s;
  if (!(hi > lo)) {
    throw Error(ErrorCode::BracketDegenerate, "kn <= 0 collapses the velocity bracket");
  }
  CriticalResult res;
  res.tol = opts.tol;
  const double hi_eval = std::max(hi - opts.upper_offset, 0.5 * (lo + hi));
  auto at = [&](double c) { return classify(params, c, opts.shoot); };
  const auto [cls_lo, cls_hi] = run_pair([&] { return at(lo); }, [&] { return at(hi_eval); });
  res.evaluations = 2;
  if (!is_direct(cls_lo)) {
    throw Error(ErrorCode::BracketInconsistent,
                "lower velocity endpoint " + fmt(lo) + " is " + std::string(to_string(cls_lo)) +
                    ", expected a direct connection");
  }
  if (is_direct(cls_hi)) {
    // cbar lies in (hi_eval, hi]; the endpoint kn - 2 sqrt(p - q) itself is the
    // degenerate node, above which P2 is a focus and every orbit overshoots.
    bisect(res, hi_eval, hi, cls_hi, ConnectionClass::Overshoot, at, opts);
  } else {
    bisect(res, lo, hi_eval, cls_lo, cls_hi, at, opts);
  }
  return res;
}

CriticalResult kstar(double n, double p, double q, const BisectionOptions& opts) {
  check_tol(opts.tol);
  const ModelParams base = validate_params(n, p, q, 1.0);
  const double k0 = 2.0 * std::sqrt(p - q) / n;
  auto at = [&](double k) {
    ModelParams pr = base;
    pr.k = k;
    return classify(pr, 0.0, opts.shoot);
  };
  CriticalResult res;
  res.tol = opts.tol;

  if (n <= 0.5 * (q + 1.0)) {
    const double below = k0 * (1.0 - 1e-3);
    const double above = k0 * (1.0 + 1e-3);
    const auto [cb, ca] = run_pair([&] { return at(below); }, [&] { return at(above); });
    res.evaluations = 2;
    if (is_direct(cb) || !is_direct(ca)) {
      throw Error(ErrorCode::BracketInconsistent,
                  "c = 0 outcome does not flip across k = 2 sqrt(p - q)/n = " + fmt(k0));
    }
    res.value = k0;
    res.bracket_lo = k0;
    res.bracket_hi = k0;
    res.endpoint_classes = {cb, ca};
    res.closed_form = true;
    return res;
  }

  double lo = k0;
  double hi = std::max(1.0, p / n);
  auto [cls_lo, cls_hi] = run_pair([&] { return at(lo); }, [&] { return at(hi); });
  res.evaluations = 2;
  int widen = 0;
  while (is_direct(cls_lo) || !is_direct(cls_hi)) {
    if (widen++ >= opts.max_widenings) {
      throw Error(ErrorCode::BracketExhausted,
                  "no sign change in [" + fmt(lo) + ", " + fmt(hi) + "] after " +
                      std::to_string(opts.max_widenings) + " widenings");
    }
    if (is_direct(cls_lo)) {
      lo /= opts.widen_factor;
      cls_lo = at(lo);
      ++res.evaluations;
    }
    if (!is_direct(cls_hi)) {
      hi *= opts.widen_factor;
      cls_hi = at(hi);
      ++res.evaluations;
    }
  }
  bisect(res, lo, hi, cls_lo, cls_hi, at, opts);
  return res;
}

std::optional<double> cbar_explicit(const ModelParams& params) {
  const double n = params.n;
  const double k = params.k;
  if (params.p == n && params.q == 1.0 && k * k * (n - 1.0) > 1.0) {
    return (k * k - 1.0) / k;
  }
  if (params.p == 2.0 * n - 1.0 && params.q == n && n > 1.0 &&
      k > (2.0 * n - 1.0) / (n * std::sqrt(n - 1.0))) {
    const double kn = k * n;
    return (kn + std::sqrt(kn * kn - 4.0 * n)) / (2.0 * n);
  }
  return std::nullopt;
}

}  // namespace frontlab
