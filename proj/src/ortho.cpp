#include "bjlab/ortho.hpp"

#include <algorithm>
#include <string>

#include "bjlab/minimize.hpp"

namespace bjlab {

namespace {

constexpr double kGoldenTol = 1e-12;

double nonzero_norm(const BochnerElement& x, const SpaceSpec& spec) {
  const double nx = bochner_norm(x, spec);
  if (nx == 0.0) throw Error(ErrorKind::ZeroElement, "x must be nonzero");
  return nx;
}

}  // namespace

ApproxParam::ApproxParam(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw Error(ErrorKind::BadSpec, "epsilon must lie in [0, 1), got " + std::to_string(epsilon));
  }
}

CheckResult is_bj_orthogonal(const BochnerElement& x, const BochnerElement& y, const SpaceSpec& spec,
                             double tol) {
  const double nx = nonzero_norm(x, spec);
  const double ny = bochner_norm(y, spec);
  CheckResult res;
  if (ny == 0.0) {
    res.verdict = true;
    res.alpha_star = 0.0;
    return res;
  }
  BochnerElement work = x;
  auto phi = [&](double a) {
    work.blocks = x.blocks + a * y.blocks;
    return bochner_norm(work, spec);
  };
  const ScalarMinimum m = minimize_convex_1d(phi, 4.0 * nx / ny, kGoldenTol);
  res.alpha_star = m.alpha_star;
  res.margin = (m.value - nx) / nx;
  res.verdict = res.margin >= -tol;
  res.boundary = minimization_boundary(res.margin, tol);
  return res;
}

CheckResult is_approx_bj_orthogonal(const BochnerElement& x, const BochnerElement& y, ApproxParam eps,
                                    const SpaceSpec& spec, double tol) {
  const double nx = nonzero_norm(x, spec);
  const double ny = bochner_norm(y, spec);
  CheckResult res;
  if (ny == 0.0) {
    res.verdict = true;
    res.alpha_star = 0.0;
    return res;
  }
  const double nx2 = nx * nx;
  const double slope = 2.0 * eps.value() * nx * ny;
  BochnerElement work = x;
  auto psi = [&](double a) {
    work.blocks = x.blocks + a * y.blocks;
    const double v = bochner_norm(work, spec);
    return (v * v - nx2) + slope * std::abs(a);
  };
  const ScalarMinimum m = minimize_convex_1d(psi, 4.0 * nx / ny, kGoldenTol);
  res.alpha_star = m.alpha_star;
  res.margin = m.value / nx2;
  res.verdict = res.margin >= -tol;
  res.boundary = minimization_boundary(res.margin, tol);
  return res;
}

CertificateMinimum min_certificate(const BochnerElement& x, const BochnerElement& y, const SpaceSpec& spec,
                                   double zero_rel) {
  check_shape(y, spec);
  nonzero_norm(x, spec);
  CertificateMinimum out;
  out.functional = support_functional(x, spec, zero_rel);

  if (spec.p != 1.0) {
    out.value = std::abs(apply_functional(out.functional, y, spec));
    return out;
  }

  const double cut = zero_threshold(x, spec.q, zero_rel);
  const Eigen::VectorXd rx = block_norms(x, spec.q);
  const Eigen::VectorXd ry = block_norms(y, spec.q);

  // Forced part from nonzero blocks, and the slack available on zero blocks.
  double forced = 0.0;
  double slack = 0.0;
  for (Index i = 0; i < spec.n; ++i) {
    if (rx(i) > cut) {
      forced += spec.weights(i) * out.functional.block(i).dot(y.block(i));
    } else {
      slack += spec.weights(i) * ry(i);
    }
  }

  out.value = std::max(0.0, std::abs(forced) - slack);
  if (slack == 0.0) return out;

  // Uniform coefficient t in [-1, 1] on every zero block: T_i = t F_{y_i}.
  const double t = std::clamp(-forced / slack, -1.0, 1.0);
  for (Index i = 0; i < spec.n; ++i) {
    if (rx(i) > cut || ry(i) == 0.0) continue;
    out.functional.block(i) = t * inner_duality_map(y.block(i), spec.q);
  }
  return out;
}

double min_certificate_value(const BochnerElement& x, const BochnerElement& y, const SpaceSpec& spec,
                             double zero_rel) {
  return min_certificate(x, y, spec, zero_rel).value;
}

CheckResult certificate_check(const BochnerElement& x, const BochnerElement& y, ApproxParam eps,
                              const SpaceSpec& spec, double tol, double zero_rel) {
  CertificateMinimum cm = min_certificate(x, y, spec, zero_rel);
  const double ny = bochner_norm(y, spec);
  CheckResult res;
  res.margin = ny == 0.0 ? eps.value() : eps.value() - cm.value / ny;
  res.verdict = res.margin >= -tol;
  res.boundary = linear_boundary(res.margin, tol);
  res.certificate = std::move(cm.functional);
  return res;
}

BochnerElement make_orthogonal_partner(const BochnerElement& x, const BochnerElement& z,
                                       const SpaceSpec& spec) {
  check_shape(z, spec);
  const double nx = nonzero_norm(x, spec);
  const BlockFunctional t = support_functional(x, spec);
  const double coef = apply_functional(t, z, spec) / nx;
  return BochnerElement(z.blocks - coef * x.blocks);
}

}  // namespace bjlab
