#pragma once

#include "stochgraph/digraph.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace stochgraph {

inline constexpr std::size_t unlimited = std::numeric_limits<std::size_t>::max();

/// Simple directed cycle, rotated so its minimal vertex leads.
struct Cycle {
  std::vector<VertexId> vertices;
  /// S(gamma): product of arc weights.
  double weight = 0.0;
  std::optional<Rational> exact_weight;

  std::size_t length() const { return vertices.size(); }
  /// lambda_S(gamma) = S(gamma)^(1/length).
  double gain() const;
};

/// Builds a Cycle from a closed vertex sequence (first vertex not repeated).
/// Throws DigraphError when an arc is missing or a vertex repeats.
Cycle make_cycle(const WeightedDigraph& d, std::vector<VertexId> vertices);

/// Sign of gain(a) - gain(b). Exact by cross-powering when both weights are
/// exact: S(a)^len(b) versus S(b)^len(a).
int compare_gains(const Cycle& a, const Cycle& b);

/// Sign of gain(c) - t, exact by comparing S(c) with t^len when possible.
int compare_gain_to(const Cycle& c, const Rational& t);

struct CycleUnion {
  std::vector<Cycle> cycles;
  std::size_t count() const { return cycles.size(); }
  std::size_t total_length() const;
  double weight() const;
  std::optional<Rational> exact_weight() const;
};

struct EnumerationLimits {
  std::size_t max_length = unlimited;
  std::size_t max_count = unlimited;
};

struct EnumerationStatus {
  std::size_t emitted = 0;
  /// More cycles existed beyond max_count, or the visitor stopped early.
  bool truncated = false;
};

/// Emits every simple cycle of length <= max_length once, minimal vertex
/// first. Uses Johnson's circuit search when the length cap does not bind and
/// a bounded depth-first search otherwise. The visitor returns false to stop.
EnumerationStatus enumerate_cycles(const WeightedDigraph& d, const EnumerationLimits& limits,
                                   const std::function<bool(const std::vector<VertexId>&)>& visit);

std::vector<Cycle> list_cycles(const WeightedDigraph& d, const EnumerationLimits& limits = {},
                               bool* truncated = nullptr);

std::optional<Cycle> find_cycle_longer_than(const WeightedDigraph& d, std::size_t length);

/// All unions of pairwise vertex-disjoint cycles (non-empty). Throws
/// BudgetExceeded beyond `max_unions`.
std::vector<CycleUnion> enumerate_cycle_unions(const WeightedDigraph& d, std::size_t max_unions = 1'000'000);

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Budget exhaustion in omega; carries the partial maximum (a lower bound).
class OmegaBudgetExceeded : public BudgetExceeded {
 public:
  OmegaBudgetExceeded(const std::string& what, std::optional<Cycle> partial)
      : BudgetExceeded(what), partial_best(std::move(partial)) {}
  std::optional<Cycle> partial_best;
};

struct OmegaResult {
  /// Maximal-gain qualifying cycle; empty when none qualifies (gain 0).
  std::optional<Cycle> best;
  double gain() const { return best ? best->gain() : 0.0; }
};

/// True when d is itself a single directed cycle.
bool is_single_cycle(const WeightedDigraph& d);

/// Supremum of gains over cycles of length <= n. `proper_only` drops a
/// cycle whose arc set is all of A(d).
OmegaResult omega(const WeightedDigraph& d, std::size_t n, bool proper_only, std::size_t max_cycles = 10'000'000);

/// Largest gain among cycles of each length 1..max_length (0 where no cycle).
std::vector<double> best_gain_by_length(const WeightedDigraph& d, std::size_t max_length);

enum class Optimality { Exact, UpperBound };

struct TransversalResult {
  std::vector<VertexId> vertices;
  Optimality optimality = Optimality::Exact;
  std::size_t nodes = 0;
  std::size_t size() const { return vertices.size(); }
};

bool is_cycle_transversal(const WeightedDigraph& d, const std::vector<VertexId>& vertices);

/// Minimum directed feedback vertex set by branch and bound: branch over the
/// vertices of a shortest remaining cycle, bound with a disjoint-cycle packing.
/// Returns the best set found with UpperBound optimality if the node budget
/// runs out. The result is always re-verified acyclic.
TransversalResult min_cycle_transversal(const WeightedDigraph& d, std::size_t node_budget = 2'000'000);

/// Shortest cycle using only vertices with allowed[v] (all when empty).
std::optional<std::vector<VertexId>> shortest_cycle(const WeightedDigraph& d, const std::vector<bool>& allowed = {});

struct CycleLengthExtremes {
  std::optional<std::size_t> ell_min;
  std::optional<std::size_t> ell_max;
  /// False when the search budget ran out; ell_max is then a lower bound.
  bool ell_max_exact = true;
};

CycleLengthExtremes ell_extremes(const WeightedDigraph& d, std::size_t node_budget = 50'000'000);

/// Greedy shortest-first family of pairwise vertex-disjoint cycles.
std::vector<Cycle> disjoint_cycle_packing(const WeightedDigraph& d);

}  // namespace stochgraph
