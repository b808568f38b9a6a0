#pragma once

// Semi-inner product on L^p(mu, l^q_d), 1 < p < inf, 1 < q < inf:
//
//   [f, g] = ||g||^{2-p} sum_{g_i != 0} mu_i ||g_i||^{p-1} F_{g_i}(f_i),   [f, 0] = 0.

#include "bjlab/blockspace.hpp"
#include "bjlab/ortho.hpp"

namespace bjlab {

double semi_inner_product(const BochnerElement& f, const BochnerElement& g, const SpaceSpec& spec,
                          double zero_rel = kDefaultZeroTol);

/// Residuals of the four semi-inner-product axioms for one sample.
struct AxiomReport {
  double linearity = 0.0;      ///< |[af+bg,h] - a[f,h] - b[g,h]|
  double homogeneity = 0.0;    ///< |[f,ag] - a[f,g]|
  double cauchy_schwarz = 0.0; ///< max(0, |[f,g]| - ||f|| ||g||)
  double norm_identity = 0.0;  ///< |[f,f] - ||f||^2|
  double scale = 1.0;          ///< (1+||f||)(1+||g||)(1+||h||)(1+|a|+|b|)^2

  double max_residual() const;
  bool holds(double rel_tol) const { return max_residual() <= rel_tol * scale; }
};

AxiomReport sip_axiom_report(const BochnerElement& f, const BochnerElement& g, const BochnerElement& h,
                             double a, double b, const SpaceSpec& spec, double zero_rel = kDefaultZeroTol);

/// Smooth-space criterion: x is eps-orthogonal to y iff |[y, x]| <= eps ||x|| ||y||.
/// margin = eps - |[y, x]| / (||x|| ||y||).
CheckResult sip_orthogonality_criterion(const BochnerElement& x, const BochnerElement& y, ApproxParam eps,
                                        const SpaceSpec& spec, double tol = kDefaultTol,
                                        double zero_rel = kDefaultZeroTol);

}  // namespace bjlab
