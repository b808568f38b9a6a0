#pragma once

// Blockwise scaling operators U_eps that preserve eps-approximate
// Birkhoff-James orthogonality without being scalar multiples of isometries,
// together with the isometry detector and the preservation trial.

#include <cstdint>
#include <string>
#include <vector>

#include "bjlab/blockspace.hpp"
#include "bjlab/ortho.hpp"
#include "bjlab/random.hpp"

namespace bjlab {

/// (U f)_i = factors_i * f_i, every factor positive.
struct ScalingOperator {
  Eigen::VectorXd factors;

  static ScalingOperator identity(Index n) { return {Eigen::VectorXd::Ones(n)}; }
  void validate(const SpaceSpec& spec) const;
};

/// A nonempty proper subset A of the atoms; the complement is the rest.
class AtomPartition {
 public:
  AtomPartition(std::vector<Index> a, Index n);

  /// A = {0, ..., k-1}.
  static AtomPartition leading(Index k, Index n);

  const std::vector<Index>& a() const { return a_; }
  std::vector<Index> complement() const;
  bool contains(Index i) const;
  Index atoms() const { return n_; }

  /// sum of weights over A.
  double mass(const SpaceSpec& spec) const;

 private:
  std::vector<Index> a_;
  Index n_;
};

/// ((1-eps) x_1, x_2, ...) on l^1(l^q_d): p = 1, unit weights, n >= 2.
ScalingOperator u_eps_l1(ApproxParam eps, const SpaceSpec& spec);

/// (1-eps) f on A, f elsewhere; p = 1.
ScalingOperator u_eps_L1(ApproxParam eps, const AtomPartition& part, const SpaceSpec& spec);

/// f on A, (1 - eps/p) f elsewhere; 1 < p < inf.
ScalingOperator u_eps_Lp(ApproxParam eps, const AtomPartition& part, const SpaceSpec& spec);

BochnerElement apply_operator(const ScalingOperator& u, const BochnerElement& f);

/// x0 on A, alpha x0 on B, zero elsewhere.
BochnerElement h_alpha_witness(double alpha, const std::vector<Index>& a, const std::vector<Index>& b,
                               const Eigen::RowVectorXd& x0, const SpaceSpec& spec);

/// h_alpha with B the complement of A.
BochnerElement h_alpha_witness(double alpha, const AtomPartition& part, const Eigen::RowVectorXd& x0,
                               const SpaceSpec& spec);

/// {0} together with +-10^k for k = -3..6.
std::vector<double> witness_alpha_grid();

struct IsometryVerdict {
  bool scalar_isometry = false;
  double spread = 0.0;  ///< (max r - min r) / max r over the probes
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

/// Probes r(f) = ||U f|| / ||f|| on the h_alpha family and on `trials` random f.
///
/// The witness uses A = {argmin factor} and B = {argmax factor}, which puts
/// both extreme ratios within reach of the alpha grid.
IsometryVerdict is_scalar_multiple_of_isometry(const ScalingOperator& u, const SpaceSpec& spec, int trials,
                                               double tol, std::uint64_t seed = 0);

/// 1 - (1 - eps/p)^p - eps, nonpositive for 0 < eps < 1 < p.
double scalar_inequality_gap(double eps, double p);

enum class TrialOutcome { Pass, Fail, Boundary };

const char* to_string(TrialOutcome o) noexcept;

struct TrialRecord {
  std::uint64_t seed = 0;
  SpaceSpec spec;
  double epsilon = 0.0;
  BochnerElement x;
  BochnerElement y;
  CheckResult source;    ///< exact check on (x, y)
  CheckResult psi;       ///< psi-minimization on (U x, U y)
  CheckResult alt;       ///< certificate (p = 1) or semi-inner product (p > 1) on (U x, U y)
  std::string alt_route;
  bool boundary = false;
  TrialOutcome outcome = TrialOutcome::Fail;
};

/// Draws x != 0 and z with standard normal entries, sets y = make_orthogonal_partner(x, z)
/// and checks U x against U y at eps by both routes. Redraws when y degenerates.
TrialRecord preservation_trial(const ScalingOperator& u, ApproxParam eps, const SpaceSpec& spec, Rng& rng,
                               double tol = kDefaultTol, double zero_rel = kDefaultZeroTol);

}  // namespace bjlab
