#include <doctest.h>

#include <cmath>

#include "bjlab/ortho.hpp"
#include "bjlab/random.hpp"
#include "bjlab/sip.hpp"
#include "oracles.hpp"

using namespace bjlab;
using oracle::elem;

TEST_CASE("[f, f] is the squared norm") {
  Rng rng = make_stream(1, 0);
  for (double p : {1.5, 2.0, 3.0}) {
    for (double q : {1.5, 2.0, 4.0}) {
      const SpaceSpec s = SpaceSpec::weighted(p, q, 3, random_weights(5, 0.1, 5, rng));
      const BochnerElement f = random_nonzero_element(s, rng);
      const double nf = bochner_norm(f, s);
      CHECK(semi_inner_product(f, f, s) == doctest::Approx(nf * nf).epsilon(1e-12));
    }
  }
}

TEST_CASE("hilbert case is the weighted dot product") {
  Rng rng = make_stream(2, 0);
  const SpaceSpec s = SpaceSpec::weighted(2, 2, 3, random_weights(4, 0.1, 5, rng));
  for (int k = 0; k < 100; ++k) {
    const BochnerElement f = random_element(s, rng);
    const BochnerElement g = random_element(s, rng);
    double dot = 0.0;
    for (Index i = 0; i < s.n; ++i) dot += s.weights(i) * f.block(i).dot(g.block(i));
    CHECK(semi_inner_product(f, g, s) == doctest::Approx(dot).epsilon(1e-12));
  }
}

TEST_CASE("blockwise orthogonal supports give zero") {
  for (double p : {1.5, 2.0, 3.0, 7.0}) {
    const SpaceSpec s = SpaceSpec::uniform(p, 3, 1, 2);
    CHECK(semi_inner_product(elem({{1, 0}}), elem({{0, 1}}), s) == 0.0);
  }
}

TEST_CASE("zero second argument and exponent errors") {
  const SpaceSpec s = SpaceSpec::uniform(3, 2, 2, 2);
  CHECK(semi_inner_product(elem({{1, 2}, {3, 4}}), BochnerElement::zero(2, 2), s) == 0.0);
  try {
    (void)semi_inner_product(elem({{1, 2}, {3, 4}}), elem({{1, 2}, {3, 4}}), SpaceSpec::uniform(1, 2, 2, 2));
    FAIL("expected UnsupportedExponent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedExponent);
  }
  try {
    (void)semi_inner_product(elem({{1, 2}, {3, 4}}), elem({{1, 2}, {3, 4}}), SpaceSpec::uniform(2, kInf, 2, 2));
    FAIL("expected NotSmooth");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSmooth);
  }
}

TEST_CASE("semi-inner product matches the defining sum computed directly") {
  Rng rng = make_stream(3, 0);
  for (int k = 0; k < 200; ++k) {
    const double p = 1.2 + 0.1 * (k % 40);
    const double q = 1.3 + 0.2 * (k % 13);
    const SpaceSpec s = SpaceSpec::weighted(p, q, 2, random_weights(3, 0.2, 4, rng));
    const BochnerElement f = random_element(s, rng);
    const BochnerElement g = random_nonzero_element(s, rng);
    // Duality map of g_i from finite differences of the plain l^q norm.
    const double ng = oracle::norm(g, s);
    double acc = 0.0;
    for (Index i = 0; i < s.n; ++i) {
      const Eigen::RowVectorXd gi = g.blocks.row(i), fi = f.blocks.row(i);
      const double h = 1e-6;
      const double dir = (oracle::lr(gi + h * fi, q) - oracle::lr(gi - h * fi, q)) / (2 * h);
      acc += s.weights(i) * std::pow(oracle::lr(gi, q), p - 1) * dir;
    }
    const double expected = acc / std::pow(ng, p - 2);
    CHECK(semi_inner_product(f, g, s) == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("axiom report examples") {
  const SpaceSpec s = SpaceSpec::uniform(3, 1.5, 2, 2);
  const BochnerElement z = BochnerElement::zero(2, 2);
  const AxiomReport zero = sip_axiom_report(z, z, z, 1.5, -2.0, s);
  CHECK(zero.max_residual() == 0.0);

  Rng rng = make_stream(4, 0);
  std::uniform_real_distribution<double> coef(-3, 3);
  const SpaceSpec h = SpaceSpec::weighted(2, 2, 3, random_weights(4, 0.1, 5, rng));
  for (int k = 0; k < 100; ++k) {
    const AxiomReport r = sip_axiom_report(random_element(h, rng), random_element(h, rng), random_element(h, rng),
                                           coef(rng), coef(rng), h);
    CHECK(r.max_residual() < 1e-12 * r.scale);
  }
}

TEST_CASE("giles axioms on a non-hilbert space") {
  Rng rng = make_stream(5, 0);
  std::uniform_real_distribution<double> coef(-3, 3);
  const SpaceSpec s = SpaceSpec::weighted(3, 1.5, 3, random_weights(5, 0.1, 5, rng));
  for (int k = 0; k < 2000; ++k) {
    const BochnerElement f = random_element(s, rng);
    const BochnerElement g = random_element(s, rng);
    const double a = coef(rng);
    const AxiomReport r = sip_axiom_report(f, g, random_element(s, rng), a, coef(rng), s);
    CHECK(r.holds(1e-9));
    // Homogeneity in the second slot for both signs of a.
    CHECK(semi_inner_product(f, a * g, s) == doctest::Approx(a * semi_inner_product(f, g, s)).epsilon(1e-10));
  }
}

TEST_CASE("sip criterion examples") {
  const SpaceSpec s = SpaceSpec::uniform(2, 2, 1, 2);
  const BochnerElement x = elem({{1, 0}});
  const BochnerElement y = elem({{0.1, 1}});
  const CheckResult r = sip_orthogonality_criterion(x, y, ApproxParam(0.1), s);
  CHECK(r.verdict);
  CHECK(r.verdict == is_approx_bj_orthogonal(x, y, ApproxParam(0.1), s).verdict);
  CHECK(r.margin == doctest::Approx(0.1 - 0.1 / std::sqrt(1.01)));

  // eps = 0 in a Hilbert space is weighted-dot orthogonality.
  const SpaceSpec h = SpaceSpec::weighted(2, 2, 2, Eigen::Vector2d(2.0, 0.5));
  CHECK(sip_orthogonality_criterion(elem({{1, 0}, {0, 0}}), elem({{0, 1}, {3, 0}}), ApproxParam(0), h).verdict);
  CHECK_FALSE(sip_orthogonality_criterion(elem({{1, 0}, {1, 0}}), elem({{0, 1}, {3, 0}}), ApproxParam(0), h).verdict);
  CHECK_THROWS_AS(sip_orthogonality_criterion(BochnerElement::zero(1, 2), y, ApproxParam(0.1), s), Error);
}

TEST_CASE("sip criterion agrees with psi-minimization") {
  Rng rng = make_stream(6, 0);
  std::normal_distribution<double> tilt(0.0, 0.25);
  std::uniform_real_distribution<double> ed(0.0, 0.95);
  for (double p : {1.5, 3.0}) {
    int compared = 0;
    for (int k = 0; k < 1000; ++k) {
      const SpaceSpec s = SpaceSpec::weighted(p, k % 2 ? 1.5 : 3.0, 3, random_weights(4, 0.1, 5, rng));
      const BochnerElement x = random_nonzero_element(s, rng);
      const BochnerElement y = make_orthogonal_partner(x, random_element(s, rng), s) + tilt(rng) * x;
      const ApproxParam e(ed(rng));
      const CheckResult a = is_approx_bj_orthogonal(x, y, e, s);
      const CheckResult b = sip_orthogonality_criterion(x, y, e, s);
      if (a.boundary || b.boundary || std::abs(b.margin) < psi_resolution(kDefaultTol)) continue;
      ++compared;
      CHECK(a.verdict == b.verdict);
    }
    CHECK(compared >= 950);
  }
}
