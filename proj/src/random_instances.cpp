#include "stochgraph/random_instances.hpp"

#include "stochgraph/digraph_io.hpp"

#include <cstdio>
#include <random>

namespace stochgraph {

WeightedDigraph random_instance(const RandomSpec& spec, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> order_dist(spec.order_min, spec.order_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<long> numerator(1, spec.max_denominator);
  const std::size_t n = order_dist(rng);

  double p = spec.arc_probability;
  std::vector<std::vector<long>> raw;
  for (int attempt = 0;; ++attempt) {
    raw.assign(n, std::vector<long>(n, 0));
    std::vector<Arc> arcs;
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = 0; v < n; ++v) {
        double threshold = u == v ? 0.5 * p : p;
        if (unit(rng) < threshold) {
          raw[u][v] = numerator(rng);
          arcs.push_back({u, v, Weight(Rational(raw[u][v]))});
        }
      }
    }
    if (!spec.strong) break;
    if (!arcs.empty() && is_strongly_connected(WeightedDigraph(n, std::move(arcs)))) break;
    // Sparse draws rarely connect; densify slowly.
    if (attempt % 50 == 49) p = std::min(1.0, p + 0.05);
  }

  std::vector<Rational> target(n, Rational(1));
  if (spec.substochastic) {
    for (auto& t : target) {
      t = Rational(numerator(rng), spec.max_denominator);
      t.canonicalize();
    }
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    VertexId slack = pick(rng);
    if (target[slack] == 1) target[slack] = Rational(spec.max_denominator - 1, spec.max_denominator);
    if (spec.max_denominator == 1) target[slack] = Rational(1, 2);
  }

  std::vector<Arc> arcs;
  for (VertexId u = 0; u < n; ++u) {
    long row = 0;
    for (long w : raw[u]) row += w;
    for (VertexId v = 0; v < n; ++v) {
      if (raw[u][v] == 0) continue;
      Rational w(raw[u][v]);
      if (spec.substochastic) w = w * target[u] / Rational(row);
      w.canonicalize();
      arcs.push_back({u, v, Weight(w)});
    }
  }
  return WeightedDigraph(n, std::move(arcs));
}

std::string fingerprint(const WeightedDigraph& d) {
  // FNV-1a over the canonical JSON text.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : digraph_to_json(d).dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace stochgraph
