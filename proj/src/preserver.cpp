#include "bjlab/preserver.hpp"

#include <algorithm>
#include <cmath>

#include "bjlab/sip.hpp"

namespace bjlab {

void ScalingOperator::validate(const SpaceSpec& spec) const {
  if (factors.size() != spec.n) {
    throw Error(ErrorKind::ShapeMismatch, "operator has " + std::to_string(factors.size()) +
                                              " factors, space has " + std::to_string(spec.n) + " atoms");
  }
  for (Index i = 0; i < factors.size(); ++i) {
    if (!(factors(i) > 0.0) || !std::isfinite(factors(i))) {
      throw Error(ErrorKind::BadSpec, "factor " + std::to_string(i) + " must be finite and positive");
    }
  }
}

AtomPartition::AtomPartition(std::vector<Index> a, Index n) : a_(std::move(a)), n_(n) {
  std::sort(a_.begin(), a_.end());
  if (std::adjacent_find(a_.begin(), a_.end()) != a_.end()) {
    throw Error(ErrorKind::BadSpec, "partition has repeated atoms");
  }
  if (a_.empty()) throw Error(ErrorKind::BadSpec, "partition set A is empty");
  if (a_.front() < 0 || a_.back() >= n) throw Error(ErrorKind::BadSpec, "partition atom out of range");
  if (static_cast<Index>(a_.size()) >= n) throw Error(ErrorKind::BadSpec, "partition complement is empty");
}

AtomPartition AtomPartition::leading(Index k, Index n) {
  std::vector<Index> a;
  for (Index i = 0; i < k; ++i) a.push_back(i);
  return AtomPartition(std::move(a), n);
}

bool AtomPartition::contains(Index i) const { return std::binary_search(a_.begin(), a_.end(), i); }

std::vector<Index> AtomPartition::complement() const {
  std::vector<Index> out;
  for (Index i = 0; i < n_; ++i) {
    if (!contains(i)) out.push_back(i);
  }
  return out;
}

double AtomPartition::mass(const SpaceSpec& spec) const {
  double m = 0.0;
  for (Index i : a_) m += spec.weights(i);
  return m;
}

namespace {

void require_open_epsilon(ApproxParam eps) {
  if (!(eps.value() > 0.0)) throw Error(ErrorKind::BadSpec, "U_eps needs 0 < eps < 1");
}

void require_partition(const AtomPartition& part, const SpaceSpec& spec) {
  if (part.atoms() != spec.n) throw Error(ErrorKind::BadSpec, "partition does not match atom count");
}

}  // namespace

ScalingOperator u_eps_l1(ApproxParam eps, const SpaceSpec& spec) {
  require_open_epsilon(eps);
  if (spec.p != 1.0) throw Error(ErrorKind::BadSpec, "l1 operator needs p = 1");
  if (spec.n < 2) throw Error(ErrorKind::BadSpec, "l1 operator needs n >= 2");
  if ((spec.weights.array() != 1.0).any()) throw Error(ErrorKind::BadSpec, "l1 operator needs unit weights");
  ScalingOperator u = ScalingOperator::identity(spec.n);
  u.factors(0) = 1.0 - eps.value();
  return u;
}

ScalingOperator u_eps_L1(ApproxParam eps, const AtomPartition& part, const SpaceSpec& spec) {
  require_open_epsilon(eps);
  if (spec.p != 1.0) throw Error(ErrorKind::BadSpec, "L1 operator needs p = 1");
  require_partition(part, spec);
  ScalingOperator u = ScalingOperator::identity(spec.n);
  for (Index i : part.a()) u.factors(i) = 1.0 - eps.value();
  return u;
}

ScalingOperator u_eps_Lp(ApproxParam eps, const AtomPartition& part, const SpaceSpec& spec) {
  require_open_epsilon(eps);
  if (!(spec.p > 1.0)) throw Error(ErrorKind::BadSpec, "Lp operator needs 1 < p < inf");
  require_partition(part, spec);
  ScalingOperator u = ScalingOperator::identity(spec.n);
  for (Index i : part.complement()) u.factors(i) = 1.0 - eps.value() / spec.p;
  return u;
}

BochnerElement apply_operator(const ScalingOperator& u, const BochnerElement& f) {
  if (u.factors.size() != f.atoms()) {
    throw Error(ErrorKind::ShapeMismatch, "operator and element disagree on atom count");
  }
  return BochnerElement(u.factors.asDiagonal() * f.blocks);
}

BochnerElement h_alpha_witness(double alpha, const std::vector<Index>& a, const std::vector<Index>& b,
                               const Eigen::RowVectorXd& x0, const SpaceSpec& spec) {
  if (x0.size() != spec.d) throw Error(ErrorKind::BadSpec, "x0 has wrong dimension");
  if (std::abs(inner_norm(x0, spec.q) - 1.0) > 1e-12) throw Error(ErrorKind::BadSpec, "x0 must be a unit vector");
  if (a.empty() || b.empty()) throw Error(ErrorKind::BadSpec, "witness sets must be nonempty");
  BochnerElement h = BochnerElement::zero(spec.n, spec.d);
  for (Index i : a) {
    if (i < 0 || i >= spec.n) throw Error(ErrorKind::BadSpec, "witness atom out of range");
    h.block(i) = x0;
  }
  for (Index i : b) {
    if (i < 0 || i >= spec.n) throw Error(ErrorKind::BadSpec, "witness atom out of range");
    if (std::find(a.begin(), a.end(), i) != a.end()) throw Error(ErrorKind::BadSpec, "witness sets overlap");
    h.block(i) = alpha * x0;
  }
  return h;
}

BochnerElement h_alpha_witness(double alpha, const AtomPartition& part, const Eigen::RowVectorXd& x0,
                               const SpaceSpec& spec) {
  require_partition(part, spec);
  return h_alpha_witness(alpha, part.a(), part.complement(), x0, spec);
}

std::vector<double> witness_alpha_grid() {
  std::vector<double> grid{0.0};
  for (int k = -3; k <= 6; ++k) {
    const double v = std::pow(10.0, k);
    grid.push_back(v);
    grid.push_back(-v);
  }
  return grid;
}

IsometryVerdict is_scalar_multiple_of_isometry(const ScalingOperator& u, const SpaceSpec& spec, int trials,
                                               double tol, std::uint64_t seed) {
  u.validate(spec);
  std::vector<double> ratios;
  auto probe = [&](const BochnerElement& f) {
    const double nf = bochner_norm(f, spec);
    if (nf > 0.0) ratios.push_back(bochner_norm(apply_operator(u, f), spec) / nf);
  };

  Index lo = 0;
  Index hi = 0;
  u.factors.minCoeff(&lo);
  u.factors.maxCoeff(&hi);
  if (lo == hi && spec.n > 1) hi = lo == 0 ? 1 : 0;
  Eigen::RowVectorXd x0 = Eigen::RowVectorXd::Zero(spec.d);
  x0(0) = 1.0;
  if (lo != hi) {
    for (double alpha : witness_alpha_grid()) probe(h_alpha_witness(alpha, {lo}, {hi}, x0, spec));
  }

  Rng rng(stream_seed(seed, 0));
  for (int t = 0; t < trials; ++t) probe(random_nonzero_element(spec, rng));

  IsometryVerdict v;
  v.min_ratio = *std::min_element(ratios.begin(), ratios.end());
  v.max_ratio = *std::max_element(ratios.begin(), ratios.end());
  v.spread = (v.max_ratio - v.min_ratio) / v.max_ratio;
  v.scalar_isometry = v.spread <= tol;
  return v;
}

double scalar_inequality_gap(double eps, double p) { return 1.0 - std::pow(1.0 - eps / p, p) - eps; }

const char* to_string(TrialOutcome o) noexcept {
  switch (o) {
    case TrialOutcome::Pass: return "pass";
    case TrialOutcome::Fail: return "fail";
    case TrialOutcome::Boundary: return "boundary";
  }
  return "unknown";
}

TrialRecord preservation_trial(const ScalingOperator& u, ApproxParam eps, const SpaceSpec& spec, Rng& rng,
                               double tol, double zero_rel) {
  u.validate(spec);
  TrialRecord rec;
  rec.spec = spec;
  rec.epsilon = eps.value();

  constexpr int kMaxDraws = 100;
  int draw = 0;
  for (; draw < kMaxDraws; ++draw) {
    rec.x = random_nonzero_element(spec, rng);
    const BochnerElement z = random_element(spec, rng);
    rec.y = make_orthogonal_partner(rec.x, z, spec);
    if (bochner_norm(rec.y, spec) >= 1e-6 * bochner_norm(rec.x, spec)) break;
  }
  if (draw == kMaxDraws) throw Error(ErrorKind::DegenerateDraw, "orthogonal partner kept vanishing");

  rec.source = is_bj_orthogonal(rec.x, rec.y, spec, tol);
  const BochnerElement ux = apply_operator(u, rec.x);
  const BochnerElement uy = apply_operator(u, rec.y);
  rec.psi = is_approx_bj_orthogonal(ux, uy, eps, spec, tol);
  if (spec.p == 1.0) {
    rec.alt_route = "certificate";
    rec.alt = certificate_check(ux, uy, eps, spec, tol, zero_rel);
  } else {
    rec.alt_route = "sip";
    rec.alt = sip_orthogonality_criterion(ux, uy, eps, spec, tol, zero_rel);
  }

  rec.boundary = rec.source.boundary || rec.psi.boundary || rec.alt.boundary ||
                 std::abs(rec.alt.margin) < psi_resolution(tol);
  if (rec.boundary) {
    rec.outcome = TrialOutcome::Boundary;
  } else {
    const bool ok = rec.source.verdict && rec.psi.verdict && rec.alt.verdict;
    rec.outcome = ok ? TrialOutcome::Pass : TrialOutcome::Fail;
  }
  return rec;
}

}  // namespace bjlab
