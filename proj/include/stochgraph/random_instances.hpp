#pragma once

#include "stochgraph/digraph.hpp"

#include <cstdint>
#include <string>

namespace stochgraph {

struct RandomSpec {
  std::uint64_t seed = 1;
  std::size_t order_min = 1;
  std::size_t order_max = 8;
  /// Probability of each ordered pair u != v; loops use half of it.
  double arc_probability = 0.35;
  /// Weights are k/denominator with k in 1..denominator before row scaling.
  long max_denominator = 9;
  /// Resample until strongly connected.
  bool strong = true;
  /// Rescale each row to a random out-weight in (0, 1], with at least one
  /// row strictly below 1. When false, raw weights are kept.
  bool substochastic = true;
};

/// Instance `index` of the seeded stream. Each index has its own generator
/// seeded from (seed, index), so the stream does not depend on how indices
/// are distributed over workers.
WeightedDigraph random_instance(const RandomSpec& spec, std::size_t index);

/// Short stable hash of a digraph's exact arc list.
std::string fingerprint(const WeightedDigraph& d);

}  // namespace stochgraph
