#pragma once

// Test-only reference computations. None of these call into the library's
// duality maps, support functionals or minimizers.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "bjlab/blockspace.hpp"

namespace oracle {

using bjlab::BlockFunctional;
using bjlab::BochnerElement;
using bjlab::Index;
using bjlab::SpaceSpec;

inline BochnerElement elem(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Index>(rows.size());
  const auto d = static_cast<Index>(rows.begin()->size());
  BochnerElement f = BochnerElement::zero(n, d);
  Index i = 0;
  for (const auto& r : rows) {
    Index k = 0;
    for (double v : r) f.blocks(i, k++) = v;
    ++i;
  }
  return f;
}

/// Plain (sum |v_j|^r)^(1/r) without scaling tricks.
inline double lr(const Eigen::RowVectorXd& v, double r) {
  if (std::isinf(r)) return v.cwiseAbs().maxCoeff();
  double s = 0.0;
  for (Index j = 0; j < v.size(); ++j) s += std::pow(std::abs(v(j)), r);
  return std::pow(s, 1.0 / r);
}

inline double norm(const BochnerElement& f, const SpaceSpec& s) {
  double acc = 0.0;
  for (Index i = 0; i < s.n; ++i) acc += s.weights(i) * std::pow(lr(f.blocks.row(i), s.q), s.p);
  return std::pow(acc, 1.0 / s.p);
}

/// Minimum of fn on a uniform grid of `points` over [lo, hi].
inline double grid_min(const std::function<double(double)>& fn, double lo, double hi, int points) {
  double best = fn(lo);
  for (int k = 1; k < points; ++k) best = std::min(best, fn(lo + (hi - lo) * k / (points - 1)));
  return best;
}

/// Golden-section maximization of a unimodal fn on [lo, hi].
inline double golden_max(const std::function<double(double)>& fn, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = fn(c), fd = fn(d);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (fc >= fd) {
      b = d; d = c; fd = fc; c = b - g * (b - a); fc = fn(c);
    } else {
      a = c; c = d; fc = fd; d = a + g * (b - a); fd = fn(d);
    }
  }
  return std::max(fc, fd);
}

/// Point of the unit sphere of l^r_2 at angle theta.
inline Eigen::RowVector2d sphere_point(double theta, double r) {
  Eigen::RowVector2d u(std::cos(theta), std::sin(theta));
  return u / lr(u, r);
}

/// max of <T, v> over the unit ball of l^r_d, d <= 2: a 41-point angle grid
/// refined by golden section around the best grid point.
inline double dual_ball_max(const Eigen::RowVectorXd& v, double r) {
  if (v.size() == 1) return std::abs(v(0));
  const double pi = std::numbers::pi;
  auto value = [&](double th) { return sphere_point(th, r).dot(v.head<2>()); };
  constexpr int kGrid = 41;
  double best_th = 0.0, best = -1e300;
  for (int k = 0; k < kGrid; ++k) {
    const double th = 2 * pi * k / kGrid;
    if (value(th) > best) {
      best = value(th);
      best_th = th;
    }
  }
  const double step = 2 * pi / kGrid;
  return std::max(best, golden_max(value, best_th - step, best_th + step));
}

/// min over support functionals T of x of |T(y)| for p = 1, d <= 2.
///
/// Nonzero blocks have a unique norming functional (smooth inner norm), whose
/// value on y_i is the one-sided derivative of ||x_i + t y_i|| at t = 0,
/// taken here by central differences. Each zero block contributes the
/// interval {<T_i, y_i> : ||T_i||_{q*} <= 1}, found by maximizing over the
/// dual ball; the Minkowski sum of intervals is an interval.
inline double min_certificate_bruteforce(const BochnerElement& x, const BochnerElement& y, const SpaceSpec& s) {
  const double qs = s.q / (s.q - 1.0);
  double peak = 0.0;
  for (Index i = 0; i < s.n; ++i) peak = std::max(peak, lr(x.blocks.row(i), s.q));
  double forced = 0.0, reach = 0.0;
  for (Index i = 0; i < s.n; ++i) {
    const Eigen::RowVectorXd xi = x.blocks.row(i);
    const Eigen::RowVectorXd yi = y.blocks.row(i);
    if (lr(xi, s.q) <= 1e-12 * peak) {
      reach += s.weights(i) * dual_ball_max(yi, qs);
    } else {
      const double h = 1e-5 * lr(xi, s.q) / std::max(lr(yi, s.q), 1e-300);
      forced += s.weights(i) * (lr(xi + h * yi, s.q) - lr(xi - h * yi, s.q)) / (2 * h);
    }
  }
  return std::max(0.0, std::abs(forced) - reach);
}

/// Exhaustive search over a Cartesian grid of zero-block functionals
/// (`points` per coordinate of the box [-1, 1]^d, kept when inside the dual
/// ball). Returns the smallest |T(y)| found; never below the true minimum.
inline double min_certificate_grid(const BochnerElement& x, const BochnerElement& y, const SpaceSpec& s,
                                   int points) {
  const double qs = s.q / (s.q - 1.0);
  double peak = 0.0;
  for (Index i = 0; i < s.n; ++i) peak = std::max(peak, lr(x.blocks.row(i), s.q));
  double forced = 0.0;
  std::vector<std::vector<double>> options;  // achievable <T_i, y_i> per zero block
  for (Index i = 0; i < s.n; ++i) {
    const Eigen::RowVectorXd xi = x.blocks.row(i);
    const Eigen::RowVectorXd yi = y.blocks.row(i);
    if (lr(xi, s.q) <= 1e-12 * peak) {
      std::vector<double> vals;
      for (int a = 0; a < points; ++a) {
        for (int b = 0; b < (s.d == 2 ? points : 1); ++b) {
          Eigen::RowVectorXd t(s.d);
          t(0) = -1.0 + 2.0 * a / (points - 1);
          if (s.d == 2) t(1) = -1.0 + 2.0 * b / (points - 1);
          if (lr(t, qs) <= 1.0 + 1e-12) vals.push_back(s.weights(i) * t.dot(yi));
        }
      }
      options.push_back(std::move(vals));
    } else {
      const double h = 1e-5 * lr(xi, s.q) / std::max(lr(yi, s.q), 1e-300);
      forced += s.weights(i) * (lr(xi + h * yi, s.q) - lr(xi - h * yi, s.q)) / (2 * h);
    }
  }
  double best = 1e300;
  std::function<void(std::size_t, double)> rec = [&](std::size_t k, double acc) {
    if (k == options.size()) {
      best = std::min(best, std::abs(acc));
      return;
    }
    for (double v : options[k]) rec(k + 1, acc + v);
  };
  rec(0, forced);
  return best;
}

}  // namespace oracle
