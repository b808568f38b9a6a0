#pragma once

// Exact and epsilon-approximate Birkhoff-James orthogonality on a discretized
// Bochner space, decided by two independent routes:
//
//  * minimization of the scalar convex functions
//      phi(a) = ||x + a y||                                     (exact)
//      psi(a) = ||x + a y||^2 - ||x||^2 + 2 eps ||x|| ||y|| |a|  (approximate)
//    over |a| <= 4 ||x|| / ||y||;
//  * support-functional certificates: x is eps-orthogonal to y iff some
//    T in J(x) has |T(y)| <= eps ||y||.

#include "bjlab/blockspace.hpp"

namespace bjlab {

inline constexpr double kDefaultTol = 1e-9;

class ApproxParam {
 public:
  explicit ApproxParam(double epsilon);
  double value() const { return epsilon_; }

 private:
  double epsilon_;
};

/// Width of the boundary band, in margin units.
inline double boundary_band(double tol) { return 10.0 * tol; }

/// Finest epsilon offset the psi-route can resolve at tolerance tol.
///
/// The minimum of psi falls below zero only quadratically in the excess
/// eps* - eps, so the psi-route sees a gap of size delta as a margin of
/// order delta^2. Cross-route comparisons exclude pairs whose linear margin
/// is within this distance of zero.
inline double psi_resolution(double tol) { return std::sqrt(boundary_band(tol)); }

/// Minimization margins sit at or just below zero when the inequality holds.
/// A verdict is flagged when moving tol by a factor of 10 either way flips it.
inline bool minimization_boundary(double margin, double tol) {
  return margin < -0.1 * tol && margin >= -boundary_band(tol);
}

/// Certificate and semi-inner-product margins are linear in epsilon.
inline bool linear_boundary(double margin, double tol) { return std::abs(margin) < boundary_band(tol); }

CheckResult is_bj_orthogonal(const BochnerElement& x, const BochnerElement& y, const SpaceSpec& spec,
                             double tol = kDefaultTol);

CheckResult is_approx_bj_orthogonal(const BochnerElement& x, const BochnerElement& y, ApproxParam eps,
                                    const SpaceSpec& spec, double tol = kDefaultTol);

struct CertificateMinimum {
  double value = 0.0;         ///< min over T in J(x) of |T(y)|
  BlockFunctional functional;  ///< a T in J(x) attaining it
};

/// Minimizes |T(y)| over the support functionals of x.
///
/// For p = 1, blocks where x vanishes may carry any functional of dual norm
/// at most one; scaled norming functionals of y_i sweep T_i(y_i) over
/// [-||y_i||, ||y_i||], which is used to cancel the forced part
/// S = sum_{x_i != 0} mu_i F_{x_i}(y_i). For p > 1 the space is smooth and
/// J(x) is the single canonical support functional.
CertificateMinimum min_certificate(const BochnerElement& x, const BochnerElement& y, const SpaceSpec& spec,
                                   double zero_rel = kDefaultZeroTol);

double min_certificate_value(const BochnerElement& x, const BochnerElement& y, const SpaceSpec& spec,
                             double zero_rel = kDefaultZeroTol);

/// margin = eps - min|T(y)| / ||y||, certificate attached.
CheckResult certificate_check(const BochnerElement& x, const BochnerElement& y, ApproxParam eps,
                              const SpaceSpec& spec, double tol = kDefaultTol,
                              double zero_rel = kDefaultZeroTol);

/// y = z - (T(z) / ||x||) x with T the canonical support functional of x, so T(y) = 0.
BochnerElement make_orthogonal_partner(const BochnerElement& x, const BochnerElement& z,
                                       const SpaceSpec& spec);

}  // namespace bjlab
