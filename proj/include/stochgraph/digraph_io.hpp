#pragma once

#include "stochgraph/digraph.hpp"

#include <json.hpp>

#include <string>

namespace stochgraph {

/// Digraph file format:
///   {"order": n, "arcs": [[u, v, "weight"], ...]}
/// with 1-based vertex ids. A weight string is a decimal or "p/q" and is read
/// exactly; a bare JSON number is read as a floating-only weight.
WeightedDigraph digraph_from_json(const nlohmann::json& j);
nlohmann::json digraph_to_json(const WeightedDigraph& d);

WeightedDigraph read_digraph_file(const std::string& path);

/// Exact weights print as "p/q"; floating-only weights as shortest decimals.
std::string weight_to_string(const Weight& w);

}  // namespace stochgraph
