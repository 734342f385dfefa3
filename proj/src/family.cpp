#include "stochgraph/family.hpp"

#include "stochgraph/cycles.hpp"

#include <numeric>

namespace stochgraph {

WeightedDigraph truncate(const TruncationFamily& f, std::size_t n) {
  if (n == 0) throw FamilyError("truncation order must be at least 1");
  std::size_t expected = f.finite_order ? std::min(n, *f.finite_order) : n;
  WeightedDigraph d;
  try {
    d = f.generator(expected);
  } catch (const std::exception& e) {
    throw FamilyError("family '" + f.name + "' failed at n=" + std::to_string(n) + ": " + e.what());
  }
  if (d.order() != expected) {
    throw FamilyError("family '" + f.name + "' produced order " + std::to_string(d.order()) + " for n=" +
                      std::to_string(n));
  }
  return d;
}

std::vector<MetadataViolation> validate_metadata(const TruncationFamily& f, std::size_t n_max) {
  std::vector<MetadataViolation> violations;
  for (std::size_t n = 1; n <= n_max; ++n) {
    WeightedDigraph d = truncate(f, n);
    if (f.metadata.transversal) {
      std::vector<bool> removed(d.order(), false);
      for (VertexId v : *f.metadata.transversal)
        if (v < d.order()) removed[v] = true;
      auto [rest, kept] = d.without(removed);
      if (!is_acyclic(rest)) {
        violations.push_back({n, "transversal", "declared transversal misses a cycle"});
      }
    }
    if (f.metadata.ell_max && f.metadata.ell_max->is_finite()) {
      std::size_t bound = f.metadata.ell_max->value();
      if (auto longer = find_cycle_longer_than(d, bound)) {
        violations.push_back({n, "ell_max",
                              "cycle of length " + std::to_string(longer->length()) + " exceeds declared " +
                                  std::to_string(bound)});
      }
    }
  }
  return violations;
}

std::vector<std::size_t> check_nesting(const TruncationFamily& f, std::size_t n_max) {
  std::vector<std::size_t> bad;
  if (n_max < 2) return bad;
  WeightedDigraph previous = truncate(f, 1);
  for (std::size_t n = 2; n <= n_max; ++n) {
    WeightedDigraph current = truncate(f, n);
    std::vector<VertexId> leading(previous.order());
    std::iota(leading.begin(), leading.end(), VertexId{0});
    if (!(current.induced(leading) == previous)) bad.push_back(n - 1);
    previous = std::move(current);
  }
  return bad;
}

}  // namespace stochgraph
