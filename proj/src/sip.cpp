#include "bjlab/sip.hpp"

#include <algorithm>

namespace bjlab {

namespace {

void require_smooth_lp(const SpaceSpec& spec) {
  if (spec.p == 1.0) throw Error(ErrorKind::UnsupportedExponent, "semi-inner product needs p > 1");
  if (!spec.inner_smooth()) throw Error(ErrorKind::NotSmooth, "semi-inner product needs 1 < q < inf");
}

}  // namespace

double semi_inner_product(const BochnerElement& f, const BochnerElement& g, const SpaceSpec& spec,
                          double zero_rel) {
  require_smooth_lp(spec);
  check_shape(f, spec);
  const double ng = bochner_norm(g, spec);
  if (ng == 0.0) return 0.0;

  const Eigen::VectorXd r = block_norms(g, spec.q);
  const double cut = zero_rel * r.maxCoeff();
  // ||g||^{2-p} ||g_i||^{p-1} = ||g|| (||g_i|| / ||g||)^{p-1}
  double acc = 0.0;
  for (Index i = 0; i < spec.n; ++i) {
    if (r(i) <= cut) continue;
    const double w = spec.weights(i) * std::pow(r(i) / ng, spec.p - 1.0);
    acc += w * inner_duality_map(g.block(i), spec.q).dot(f.block(i));
  }
  return ng * acc;
}

double AxiomReport::max_residual() const {
  return std::max({linearity, homogeneity, cauchy_schwarz, norm_identity});
}

AxiomReport sip_axiom_report(const BochnerElement& f, const BochnerElement& g, const BochnerElement& h,
                             double a, double b, const SpaceSpec& spec, double zero_rel) {
  const double nf = bochner_norm(f, spec);
  const double ng = bochner_norm(g, spec);
  const double nh = bochner_norm(h, spec);

  AxiomReport rep;
  auto sip = [&](const BochnerElement& u, const BochnerElement& v) { return semi_inner_product(u, v, spec, zero_rel); };
  rep.linearity = std::abs(sip(a * f + b * g, h) - a * sip(f, h) - b * sip(g, h));
  const double fg = sip(f, g);
  rep.homogeneity = std::abs(sip(f, a * g) - a * fg);
  rep.cauchy_schwarz = std::max(0.0, std::abs(fg) - nf * ng);
  rep.norm_identity = std::abs(sip(f, f) - nf * nf);
  const double s = 1.0 + std::abs(a) + std::abs(b);
  rep.scale = (1.0 + nf) * (1.0 + ng) * (1.0 + nh) * s * s;
  return rep;
}

CheckResult sip_orthogonality_criterion(const BochnerElement& x, const BochnerElement& y, ApproxParam eps,
                                        const SpaceSpec& spec, double tol, double zero_rel) {
  require_smooth_lp(spec);
  const double nx = bochner_norm(x, spec);
  if (nx == 0.0) throw Error(ErrorKind::ZeroElement, "x must be nonzero");
  const double ny = bochner_norm(y, spec);
  CheckResult res;
  if (ny == 0.0) {
    res.margin = eps.value();
  } else {
    res.margin = eps.value() - std::abs(semi_inner_product(y, x, spec, zero_rel)) / (nx * ny);
  }
  res.verdict = res.margin >= -tol;
  res.boundary = linear_boundary(res.margin, tol);
  return res;
}

}  // namespace bjlab
