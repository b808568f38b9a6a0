#pragma once

// Discretized Lebesgue-Bochner spaces L^p(mu, l^q_d) over n weighted atoms.
//
// An element is an n x d row-major matrix; row i is the value f(s_i) in the
// inner space l^q_d. A dual element pairs with it through
//   T(g) = sum_i mu_i <T_i, g_i>.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "bjlab/error.hpp"

namespace bjlab {

using Index = Eigen::Index;

template <typename Scalar>
using BlockMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Blocks with norm at most this fraction of the largest block norm count as zero.
inline constexpr double kDefaultZeroTol = 1e-12;

/// Hoelder conjugate r/(r-1), with 1 <-> infinity.
inline double conjugate_exponent(double r) {
  if (r == 1.0) return kInf;
  if (std::isinf(r)) return 1.0;
  return r / (r - 1.0);
}

struct SpaceSpec {
  double p = 2.0;
  double q = 2.0;
  Index n = 1;
  Index d = 1;
  Eigen::VectorXd weights;

  /// All weights equal to one.
  static SpaceSpec uniform(double p, double q, Index n, Index d);
  static SpaceSpec weighted(double p, double q, Index d, Eigen::VectorXd weights);

  /// Throws BadSpec on any violated field constraint.
  void validate() const;

  bool inner_smooth() const { return q > 1.0 && std::isfinite(q); }
  double dual_p() const { return conjugate_exponent(p); }
  double dual_q() const { return conjugate_exponent(q); }
  double total_mass() const { return weights.sum(); }

  bool operator==(const SpaceSpec& other) const;
};

template <typename Scalar>
struct BasicBochnerElement {
  BlockMatrix<Scalar> blocks;

  BasicBochnerElement() = default;
  explicit BasicBochnerElement(BlockMatrix<Scalar> b) : blocks(std::move(b)) {}

  static BasicBochnerElement zero(Index n, Index d) {
    return BasicBochnerElement(BlockMatrix<Scalar>::Zero(n, d));
  }

  Index atoms() const { return blocks.rows(); }
  Index dim() const { return blocks.cols(); }
  auto block(Index i) const { return blocks.row(i); }
  auto block(Index i) { return blocks.row(i); }

  BasicBochnerElement& operator+=(const BasicBochnerElement& o) {
    blocks += o.blocks;
    return *this;
  }
  BasicBochnerElement& operator-=(const BasicBochnerElement& o) {
    blocks -= o.blocks;
    return *this;
  }
  BasicBochnerElement& operator*=(Scalar a) {
    blocks *= a;
    return *this;
  }

  friend BasicBochnerElement operator+(BasicBochnerElement a, const BasicBochnerElement& b) { return a += b; }
  friend BasicBochnerElement operator-(BasicBochnerElement a, const BasicBochnerElement& b) { return a -= b; }
  friend BasicBochnerElement operator*(Scalar s, BasicBochnerElement a) { return a *= s; }
  friend BasicBochnerElement operator*(BasicBochnerElement a, Scalar s) { return a *= s; }
};

/// Element of L^inf(mu, (l^q_d)^*) or L^{p*}(mu, (l^q_d)^*), acting by weighted pairing.
template <typename Scalar>
struct BasicBlockFunctional {
  BlockMatrix<Scalar> blocks;

  BasicBlockFunctional() = default;
  explicit BasicBlockFunctional(BlockMatrix<Scalar> b) : blocks(std::move(b)) {}

  static BasicBlockFunctional zero(Index n, Index d) {
    return BasicBlockFunctional(BlockMatrix<Scalar>::Zero(n, d));
  }

  Index atoms() const { return blocks.rows(); }
  Index dim() const { return blocks.cols(); }
  auto block(Index i) const { return blocks.row(i); }
  auto block(Index i) { return blocks.row(i); }
};

using BochnerElement = BasicBochnerElement<double>;
using BlockFunctional = BasicBlockFunctional<double>;

/// Outcome of any orthogonality query.
///
/// `margin` is signed: nonnegative (up to tol) means the defining inequality
/// holds. `boundary` marks verdicts that are not stable under the tolerance
/// in force and must be excluded from cross-route comparisons.
struct CheckResult {
  bool verdict = false;
  double margin = 0.0;
  double alpha_star = std::numeric_limits<double>::quiet_NaN();
  std::optional<BlockFunctional> certificate;
  bool boundary = false;
};

// ---------------------------------------------------------------------------
// Inner space l^q_d

/// ||v||_q for q in [1, inf]. Scaled by max|v_j| so large exponents do not overflow.
template <typename Derived>
typename Derived::Scalar inner_norm(const Eigen::MatrixBase<Derived>& v, double q) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::pow;
  if (v.size() == 0) return Scalar(0);
  const Scalar peak = v.cwiseAbs().maxCoeff();
  if (std::isinf(q) || peak == Scalar(0)) return peak;
  if (q == 1.0) return v.cwiseAbs().sum();
  if (q == 2.0) return v.norm();
  Scalar acc(0);
  for (Index j = 0; j < v.size(); ++j) acc += pow(abs(v(j)) / peak, q);
  return peak * pow(acc, Scalar(1) / q);
}

/// The unique norming functional F_v of a nonzero v in smooth l^q_d:
/// F_v(v) = ||v||_q and ||F_v||_{q*} = 1.
template <typename Derived>
typename Derived::PlainObject inner_duality_map(const Eigen::MatrixBase<Derived>& v, double q) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::pow;
  if (!(q > 1.0) || std::isinf(q)) throw Error(ErrorKind::NotSmooth, "duality map needs 1 < q < inf");
  const Scalar nv = inner_norm(v, q);
  if (nv == Scalar(0)) throw Error(ErrorKind::ZeroVector, "duality map at zero vector");
  typename Derived::PlainObject out(v.rows(), v.cols());
  for (Index j = 0; j < v.size(); ++j) {
    const Scalar r = abs(v(j)) / nv;
    const Scalar s = v(j) > Scalar(0) ? Scalar(1) : (v(j) < Scalar(0) ? Scalar(-1) : Scalar(0));
    out(j) = s * pow(r, Scalar(q - 1.0));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Space-level operations

void check_shape(const BochnerElement& f, const SpaceSpec& spec);
void check_shape(const BlockFunctional& t, const SpaceSpec& spec);

/// Per-atom inner norms ||f_i||_q.
Eigen::VectorXd block_norms(const BochnerElement& f, double q);

double bochner_norm(const BochnerElement& f, const SpaceSpec& spec);

/// Indices i with ||f_i||_q <= tol (absolute tolerance).
std::vector<Index> zero_set(const BochnerElement& f, double q, double tol);

/// Zero set with the default tolerance kDefaultZeroTol relative to the largest block norm.
std::vector<Index> zero_set(const BochnerElement& f, const SpaceSpec& spec);

/// Absolute threshold kDefaultZeroTol * max_i ||f_i||_q (or `rel` in place of the default).
double zero_threshold(const BochnerElement& f, double q, double rel = kDefaultZeroTol);

/// Canonical support functional at f != 0: T(f) = ||f||, ||T|| = 1.
/// Zero blocks of f receive the zero functional.
BlockFunctional support_functional(const BochnerElement& f, const SpaceSpec& spec,
                                   double zero_rel = kDefaultZeroTol);

double apply_functional(const BlockFunctional& t, const BochnerElement& g, const SpaceSpec& spec);

/// Dual norm: max_i ||T_i||_{q*} for p = 1, the weighted l^{p*} sum otherwise.
double functional_norm(const BlockFunctional& t, const SpaceSpec& spec);

}  // namespace bjlab
