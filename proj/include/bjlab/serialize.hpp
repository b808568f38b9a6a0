#pragma once

// JSON records for spaces and elements. q = inf is written as the string "inf";
// elements are nested arrays, one row per block. Doubles round-trip exactly.

#include <string>

#include <nlohmann/json.hpp>

#include "bjlab/blockspace.hpp"

namespace bjlab {

nlohmann::json to_json(const SpaceSpec& spec);
SpaceSpec spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BlockMatrix<double>& blocks);
BlockMatrix<double> blocks_from_json(const nlohmann::json& j);

inline nlohmann::json to_json(const BochnerElement& f) { return to_json(f.blocks); }
inline nlohmann::json to_json(const BlockFunctional& t) { return to_json(t.blocks); }
inline BochnerElement element_from_json(const nlohmann::json& j) { return BochnerElement(blocks_from_json(j)); }
inline BlockFunctional functional_from_json(const nlohmann::json& j) {
  return BlockFunctional(blocks_from_json(j));
}

/// Exponent from a number or one of "inf", "infinity".
double exponent_from_json(const nlohmann::json& j);

/// %.17g, with "inf" for infinity.
std::string format_double(double v);

}  // namespace bjlab
