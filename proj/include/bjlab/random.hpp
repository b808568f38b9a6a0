#pragma once

#include <cstdint>
#include <random>

#include "bjlab/blockspace.hpp"

namespace bjlab {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of the stream for trial `index` under `master`; independent of execution order.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept;

inline Rng make_stream(std::uint64_t master, std::uint64_t index) { return Rng(stream_seed(master, index)); }

/// Blocks with i.i.d. standard normal entries.
BochnerElement random_element(const SpaceSpec& spec, Rng& rng);

/// random_element redrawn until its norm is at least 1e-6.
BochnerElement random_nonzero_element(const SpaceSpec& spec, Rng& rng);

/// n weights drawn uniformly from [lo, hi].
Eigen::VectorXd random_weights(Index n, double lo, double hi, Rng& rng);

}  // namespace bjlab
