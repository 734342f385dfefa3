#include "stochgraph/digraph_io.hpp"

#include <fstream>

namespace stochgraph {

WeightedDigraph digraph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("arcs")) {
    throw DigraphError("digraph JSON needs 'order' and 'arcs'");
  }
  const auto order = j.at("order").get<std::size_t>();
  std::vector<Arc> arcs;
  for (const auto& entry : j.at("arcs")) {
    if (!entry.is_array() || entry.size() != 3) throw DigraphError("each arc must be [u, v, weight]");
    auto u = entry[0].get<std::size_t>();
    auto v = entry[1].get<std::size_t>();
    if (u == 0 || v == 0) throw DigraphError("vertex ids are 1-based");
    Weight w;
    if (entry[2].is_string()) {
      w = Weight(parse_rational(entry[2].get<std::string>()));
    } else if (entry[2].is_number()) {
      w = Weight(entry[2].get<double>());
    } else {
      throw DigraphError("arc weight must be a string or number");
    }
    arcs.push_back(Arc{u - 1, v - 1, std::move(w)});
  }
  return WeightedDigraph(order, std::move(arcs));
}

std::string weight_to_string(const Weight& w) {
  return w.exact ? to_string(*w.exact) : to_decimal_string(w.value);
}

nlohmann::json digraph_to_json(const WeightedDigraph& d) {
  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& arc : d.arcs()) arcs.push_back({arc.from + 1, arc.to + 1, weight_to_string(arc.weight)});
  return {{"order", d.order()}, {"arcs", std::move(arcs)}};
}

WeightedDigraph read_digraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DigraphError("cannot open digraph file '" + path + "'");
  nlohmann::json j;
  in >> j;
  return digraph_from_json(j);
}

}  // namespace stochgraph
