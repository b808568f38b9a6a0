#include "bjlab/serialize.hpp"

#include <cstdio>

namespace bjlab {

using nlohmann::json;

double exponent_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInf;
  }
  throw Error(ErrorKind::BadSpec, "exponent must be a number or \"inf\"");
}

json to_json(const SpaceSpec& spec) {
  json j;
  j["p"] = spec.p;
  j["q"] = std::isinf(spec.q) ? json("inf") : json(spec.q);
  j["n"] = spec.n;
  j["d"] = spec.d;
  j["weights"] = std::vector<double>(spec.weights.data(), spec.weights.data() + spec.weights.size());
  return j;
}

SpaceSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::BadSpec, "space record must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "p" && key != "q" && key != "n" && key != "d" && key != "weights") {
      throw Error(ErrorKind::BadSpec, "unknown space field '" + key + "'");
    }
  }
  SpaceSpec s;
  try {
    s.p = exponent_from_json(j.at("p"));
    s.q = exponent_from_json(j.at("q"));
    s.n = j.at("n").get<Index>();
    s.d = j.at("d").get<Index>();
    const auto w = j.at("weights").get<std::vector<double>>();
    s.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Index>(w.size()));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadSpec, e.what());
  }
  s.validate();
  return s;
}

json to_json(const BlockMatrix<double>& blocks) {
  json rows = json::array();
  for (Index i = 0; i < blocks.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < blocks.cols(); ++k) row.push_back(blocks(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

BlockMatrix<double> blocks_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ShapeMismatch, "blocks must be a nonempty array of rows");
  const auto n = static_cast<Index>(j.size());
  const auto d = static_cast<Index>(j.front().is_array() ? j.front().size() : 0);
  if (d == 0) throw Error(ErrorKind::ShapeMismatch, "blocks must have positive dimension");
  BlockMatrix<double> out(n, d);
  for (Index i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != d) {
      throw Error(ErrorKind::ShapeMismatch, "block " + std::to_string(i) + " has the wrong dimension");
    }
    for (Index k = 0; k < d; ++k) {
      const json& v = row[static_cast<std::size_t>(k)];
      if (!v.is_number()) throw Error(ErrorKind::NonFiniteValue, "block entries must be numbers");
      out(i, k) = v.get<double>();
    }
  }
  return out;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace bjlab
