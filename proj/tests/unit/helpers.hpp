#pragma once

#include "stochgraph/digraph.hpp"
#include "stochgraph/family.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>
#include <tuple>

namespace testing {

using namespace stochgraph;

/// Arcs given 1-based, weights as rational strings.
inline WeightedDigraph graph(std::size_t order, std::initializer_list<std::tuple<int, int, const char*>> arcs) {
  DigraphBuilder b(order);
  for (auto [u, v, w] : arcs) b.arc(static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1), parse_rational(w));
  return b.build();
}

inline WeightedDigraph loop(const char* w) { return graph(1, {{1, 1, w}}); }
inline WeightedDigraph two_cycle(const char* p, const char* q) { return graph(2, {{1, 2, p}, {2, 1, q}}); }
inline WeightedDigraph triangle(const char* a = "1/2", const char* b = "1/3", const char* c = "1/5") {
  return graph(3, {{1, 2, a}, {2, 3, b}, {3, 1, c}});
}
inline WeightedDigraph complete3(const char* w = "1/3") {
  return graph(3, {{1, 2, w}, {1, 3, w}, {2, 1, w}, {2, 3, w}, {3, 1, w}, {3, 2, w}});
}

/// Brute-force relative comparison for doubles.
inline bool close(double a, double b, double rel) {
  double s = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= rel * s;
}

}  // namespace testing
