#include "bjlab/blockspace.hpp"

#include <algorithm>
#include <string>

namespace bjlab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::NotSmooth: return "NotSmooth";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::UnsupportedExponent: return "UnsupportedExponent";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::DegenerateDraw: return "DegenerateDraw";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

SpaceSpec SpaceSpec::uniform(double p, double q, Index n, Index d) {
  SpaceSpec s;
  s.p = p;
  s.q = q;
  s.n = n;
  s.d = d;
  s.weights = Eigen::VectorXd::Ones(n);
  s.validate();
  return s;
}

SpaceSpec SpaceSpec::weighted(double p, double q, Index d, Eigen::VectorXd weights) {
  SpaceSpec s;
  s.p = p;
  s.q = q;
  s.n = weights.size();
  s.d = d;
  s.weights = std::move(weights);
  s.validate();
  return s;
}

void SpaceSpec::validate() const {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::BadSpec, "p must satisfy 1 <= p < inf");
  if (!(q >= 1.0)) throw Error(ErrorKind::BadSpec, "q must satisfy 1 <= q <= inf");
  if (n < 1) throw Error(ErrorKind::BadSpec, "n must be positive");
  if (d < 1) throw Error(ErrorKind::BadSpec, "d must be positive");
  if (weights.size() != n) {
    throw Error(ErrorKind::BadSpec, "expected " + std::to_string(n) + " weights, got " +
                                        std::to_string(weights.size()));
  }
  for (Index i = 0; i < n; ++i) {
    if (!(weights(i) > 0.0) || !std::isfinite(weights(i))) {
      throw Error(ErrorKind::BadSpec, "weight " + std::to_string(i) + " must be finite and positive");
    }
  }
}

bool SpaceSpec::operator==(const SpaceSpec& other) const {
  return p == other.p && q == other.q && n == other.n && d == other.d && weights == other.weights;
}

void check_shape(const BochnerElement& f, const SpaceSpec& spec) {
  if (f.atoms() != spec.n || f.dim() != spec.d) {
    throw Error(ErrorKind::ShapeMismatch, "element is " + std::to_string(f.atoms()) + "x" +
                                              std::to_string(f.dim()) + ", space is " +
                                              std::to_string(spec.n) + "x" + std::to_string(spec.d));
  }
  if (!f.blocks.allFinite()) throw Error(ErrorKind::NonFiniteValue, "element has non-finite entries");
}

void check_shape(const BlockFunctional& t, const SpaceSpec& spec) {
  if (t.atoms() != spec.n || t.dim() != spec.d) {
    throw Error(ErrorKind::ShapeMismatch, "functional is " + std::to_string(t.atoms()) + "x" +
                                              std::to_string(t.dim()) + ", space is " +
                                              std::to_string(spec.n) + "x" + std::to_string(spec.d));
  }
}

Eigen::VectorXd block_norms(const BochnerElement& f, double q) {
  Eigen::VectorXd out(f.atoms());
  for (Index i = 0; i < f.atoms(); ++i) out(i) = inner_norm(f.block(i), q);
  return out;
}

namespace {

// (sum_i w_i r_i^p)^(1/p) for nonnegative r, scaled against overflow.
double weighted_lp(const Eigen::VectorXd& r, const Eigen::VectorXd& w, double p) {
  if (std::isinf(p)) return r.size() ? r.maxCoeff() : 0.0;
  if (p == 1.0) return w.dot(r);
  const double peak = r.size() ? r.maxCoeff() : 0.0;
  if (peak == 0.0) return 0.0;
  double acc = 0.0;
  for (Index i = 0; i < r.size(); ++i) acc += w(i) * std::pow(r(i) / peak, p);
  return peak * std::pow(acc, 1.0 / p);
}

}  // namespace

double bochner_norm(const BochnerElement& f, const SpaceSpec& spec) {
  check_shape(f, spec);
  return weighted_lp(block_norms(f, spec.q), spec.weights, spec.p);
}

std::vector<Index> zero_set(const BochnerElement& f, double q, double tol) {
  std::vector<Index> out;
  for (Index i = 0; i < f.atoms(); ++i) {
    if (inner_norm(f.block(i), q) <= tol) out.push_back(i);
  }
  return out;
}

double zero_threshold(const BochnerElement& f, double q, double rel) {
  const Eigen::VectorXd r = block_norms(f, q);
  return r.size() ? rel * r.maxCoeff() : 0.0;
}

std::vector<Index> zero_set(const BochnerElement& f, const SpaceSpec& spec) {
  return zero_set(f, spec.q, zero_threshold(f, spec.q));
}

BlockFunctional support_functional(const BochnerElement& f, const SpaceSpec& spec, double zero_rel) {
  check_shape(f, spec);
  if (!spec.inner_smooth()) throw Error(ErrorKind::NotSmooth, "support functional needs 1 < q < inf");
  const Eigen::VectorXd r = block_norms(f, spec.q);
  const double norm = weighted_lp(r, spec.weights, spec.p);
  if (norm == 0.0) throw Error(ErrorKind::ZeroElement, "support functional at zero element");
  const double cut = zero_rel * r.maxCoeff();

  BlockFunctional t = BlockFunctional::zero(spec.n, spec.d);
  for (Index i = 0; i < spec.n; ++i) {
    if (r(i) <= cut) continue;
    const double scale = spec.p == 1.0 ? 1.0 : std::pow(r(i) / norm, spec.p - 1.0);
    t.block(i) = scale * inner_duality_map(f.block(i), spec.q);
  }
  return t;
}

double apply_functional(const BlockFunctional& t, const BochnerElement& g, const SpaceSpec& spec) {
  check_shape(t, spec);
  check_shape(g, spec);
  double acc = 0.0;
  for (Index i = 0; i < spec.n; ++i) acc += spec.weights(i) * t.block(i).dot(g.block(i));
  return acc;
}

double functional_norm(const BlockFunctional& t, const SpaceSpec& spec) {
  check_shape(t, spec);
  const double qs = spec.dual_q();
  Eigen::VectorXd r(spec.n);
  for (Index i = 0; i < spec.n; ++i) r(i) = inner_norm(t.block(i), qs);
  if (spec.p == 1.0) return r.maxCoeff();
  return weighted_lp(r, spec.weights, spec.dual_p());
}

}  // namespace bjlab
