#pragma once

#include "stochgraph/family.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace stochgraph {

/// Named families with JSON parameters (all optional):
///   example1       {"schedule": "power"|"geometric", "eps": 0.5, "q": "1/2", "a": "1/2"}
///   example2       {"exponent": 0.75} or {"prefix": ["3/5", "4/5"], "sorted": true}
///   prop1          {"lengths": "pow2"|"linear", "target": "1/2"}
///   prop2          {"k_max": 6, "gamma": false}
///   corollary1     {"g": "2^-n"|"n^-p", "power": 2, "lengths": "linear"|"pow2"}
///   theorem2-fast  same as corollary1
///   loop           {"weight": "1/2"}
TruncationFamily make_family(const std::string& name, const nlohmann::json& params = nlohmann::json::object());

std::vector<std::string> family_names();

}  // namespace stochgraph
