#include "bjlab/random.hpp"

namespace bjlab {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

BochnerElement random_element(const SpaceSpec& spec, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  BochnerElement f = BochnerElement::zero(spec.n, spec.d);
  for (Index i = 0; i < spec.n; ++i) {
    for (Index j = 0; j < spec.d; ++j) f.blocks(i, j) = normal(rng);
  }
  return f;
}

BochnerElement random_nonzero_element(const SpaceSpec& spec, Rng& rng) {
  for (;;) {
    BochnerElement f = random_element(spec, rng);
    if (bochner_norm(f, spec) >= 1e-6) return f;
  }
}

Eigen::VectorXd random_weights(Index n, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd w(n);
  for (Index i = 0; i < n; ++i) w(i) = u(rng);
  return w;
}

}  // namespace bjlab
