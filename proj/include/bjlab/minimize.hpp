#pragma once

#include <cmath>
#include <string>

#include "bjlab/error.hpp"

namespace bjlab {

struct ScalarMinimum {
  double alpha_star = 0.0;
  double value = 0.0;
  int iterations = 0;
};

inline constexpr int kMaxGoldenIterations = 200;

/// Golden-section search for the minimum of a convex phi on [-radius, radius].
///
/// Stops once the bracket is narrower than tol * 2 * radius (or after
/// kMaxGoldenIterations). The endpoints and alpha = 0 are always evaluated,
/// so kinks at the origin and minima on the boundary are hit exactly.
template <typename Fn>
ScalarMinimum minimize_convex_1d(Fn&& phi, double radius, double tol) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::NonFiniteValue, "search radius must be finite and positive");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::NonFiniteValue, "tolerance must be positive");

  auto eval = [&](double a) {
    const double v = phi(a);
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::NonFiniteValue, "objective is not finite at alpha=" + std::to_string(a));
    }
    return v;
  };

  ScalarMinimum best{0.0, eval(0.0), 0};
  auto consider = [&](double a, double v) {
    if (v < best.value) {
      best.alpha_star = a;
      best.value = v;
    }
  };
  consider(-radius, eval(-radius));
  consider(radius, eval(radius));

  constexpr double kInvPhi = 0.6180339887498949;  // (sqrt 5 - 1) / 2
  double lo = -radius;
  double hi = radius;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = eval(c);
  double fd = eval(d);
  const double width_stop = tol * 2.0 * radius;

  int it = 0;
  while (it < kMaxGoldenIterations && hi - lo > width_stop) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = eval(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = eval(d);
    }
    ++it;
  }
  consider(c, fc);
  consider(d, fd);
  const double mid = 0.5 * (lo + hi);
  consider(mid, eval(mid));
  best.iterations = it;
  return best;
}

}  // namespace bjlab
