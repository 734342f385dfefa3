#include "helpers.hpp"

#include "stochgraph/constructions.hpp"
#include "stochgraph/cycles.hpp"
#include "stochgraph/random_instances.hpp"
#include "stochgraph/spectral.hpp"

#include <doctest.h>

#include <functional>
#include <set>

using namespace stochgraph;
using namespace testing;

namespace {

// Oracle: every vertex sequence starting at its minimum, extended one arc at
// a time; a closing arc back to the start counts one cycle.
std::size_t brute_cycle_count(const WeightedDigraph& d) {
  std::size_t count = 0;
  std::vector<bool> used(d.order());
  std::function<void(VertexId, VertexId)> walk = [&](VertexId start, VertexId at) {
    for (VertexId w = start; w < d.order(); ++w) {
      if (!d.has_arc(at, w)) continue;
      if (w == start) {
        ++count;
      } else if (!used[w]) {
        used[w] = true;
        walk(start, w);
        used[w] = false;
      }
    }
  };
  for (VertexId s = 0; s < d.order(); ++s) {
    used[s] = true;
    walk(s, s);
    used[s] = false;
  }
  return count;
}

// Oracle: smallest subset whose removal leaves an acyclic digraph.
std::size_t brute_fvs_size(const WeightedDigraph& d) {
  const std::size_t n = d.order();
  std::size_t best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::size_t k = static_cast<std::size_t>(__builtin_popcount(mask));
    if (k >= best) continue;
    std::vector<bool> removed(n);
    for (std::size_t v = 0; v < n; ++v) removed[v] = (mask >> v) & 1u;
    if (is_acyclic(d.without(removed).first)) best = k;
  }
  return best;
}

}  // namespace

TEST_SUITE("cycles") {
  TEST_CASE("enumeration examples") {
    auto tri = list_cycles(triangle());
    REQUIRE(tri.size() == 1);
    CHECK(tri[0].length() == 3);
    CHECK(*tri[0].exact_weight == Rational(1, 30));

    auto ex1 = build_example1(example1_geometric(Rational(1, 2)));
    auto c3 = list_cycles(truncate(ex1, 3));
    REQUIRE(c3.size() == 3);
    std::set<std::vector<VertexId>> got;
    for (auto& c : c3) got.insert(c.vertices);
    CHECK(got == std::set<std::vector<VertexId>>{{0}, {0, 1}, {0, 1, 2}});

    auto k3 = list_cycles(complete3());
    CHECK(k3.size() == 5);
    std::size_t two = 0, three = 0;
    for (auto& c : k3) (c.length() == 2 ? two : three) += 1;
    CHECK(two == 3);
    CHECK(three == 2);
  }

  TEST_CASE("enumeration matches a brute-force count") {
    RandomSpec spec;
    spec.seed = 5;
    spec.order_max = 7;
    spec.arc_probability = 0.5;
    for (std::size_t i = 0; i < 30; ++i) {
      auto d = random_instance(spec, i);
      auto all = list_cycles(d);
      CHECK(all.size() == brute_cycle_count(d));
      // Bounded-length search agrees with filtering the full list.
      std::size_t short_ones = 0;
      for (auto& c : all) short_ones += c.length() <= 3;
      CHECK(list_cycles(d, {3, unlimited}).size() == short_ones);
      for (auto& c : all) CHECK(c.vertices.front() == *std::min_element(c.vertices.begin(), c.vertices.end()));
    }
  }

  TEST_CASE("max_count truncates") {
    bool truncated = false;
    auto some = list_cycles(complete3(), {unlimited, 2}, &truncated);
    CHECK(some.size() == 2);
    CHECK(truncated);
  }

  TEST_CASE("gains compare exactly by cross-powering") {
    auto a = make_cycle(two_cycle("1/4", "1/4"), {0, 1});
    CHECK(a.gain() == doctest::Approx(0.25));
    auto b = make_cycle(loop("1/4"), {0});
    CHECK(compare_gains(a, b) == 0);
    CHECK(compare_gain_to(a, Rational(1, 4)) == 0);
    CHECK(compare_gain_to(a, Rational(1, 5)) > 0);
    CHECK_THROWS_AS(make_cycle(triangle(), {0, 2, 1}), DigraphError);
  }

  TEST_CASE("omega examples") {
    CHECK(omega(loop("0.7"), 1, false).gain() == doctest::Approx(0.7));
    CHECK(omega(two_cycle("1/4", "1/4"), 2, false).gain() == doctest::Approx(0.25));
    // proper_only drops a cycle that is the whole digraph.
    CHECK(omega(loop("0.7"), 1, true).gain() == 0.0);

    // Example 1 with the power schedule: omega(D_n, n) >= f_n^{1/n}.
    auto params = example1_power(0.5);
    auto f = build_example1(params);
    for (std::size_t n : {2, 5, 9, 14}) {
      double w = omega(truncate(f, n), n, false).gain();
      CHECK(w >= std::pow(params.f(n), 1.0 / static_cast<double>(n)) * (1 - 1e-12));
      CHECK(w == doctest::Approx(example1_omega(params, n)).epsilon(1e-12));
    }
  }

  TEST_CASE("omega is monotone in n and below the Perron root") {
    RandomSpec spec;
    spec.seed = 9;
    for (std::size_t i = 0; i < 30; ++i) {
      auto d = random_instance(spec, i);
      double prev = 0.0;
      double rho = perron_root(d);
      for (std::size_t n = 1; n <= d.order(); ++n) {
        double w = omega(d, n, false).gain();
        CHECK(w >= prev);
        CHECK(w <= rho * (1 + 1e-12));
        prev = w;
      }
    }
  }

  TEST_CASE("gain bridging identity") {
    RandomSpec spec;
    spec.seed = 17;
    for (std::size_t i = 0; i < 20; ++i) {
      for (auto& c : list_cycles(random_instance(spec, i))) {
        double s = c.weight, g = c.gain();
        double l = static_cast<double>(c.length());
        double geometric = 0.0;
        for (std::size_t k = 0; k < c.length(); ++k) geometric += std::pow(g, static_cast<double>(k));
        CHECK(1 - s <= l * (1 - g) + 1e-12);
        CHECK(std::abs((1 - s) - (1 - g) * geometric) <= 1e-12);
      }
    }
  }

  TEST_CASE("transversal examples") {
    CHECK(min_cycle_transversal(triangle()).size() == 1);
    CHECK(min_cycle_transversal(complete3()).size() == 2);
    CHECK(brute_fvs_size(complete3()) == 2);
    auto ex1 = build_example1(example1_geometric(Rational(1, 2)));
    for (std::size_t n : {1, 2, 6, 15}) {
      auto t = min_cycle_transversal(truncate(ex1, n));
      CHECK(t.vertices == std::vector<VertexId>{0});
      CHECK(t.optimality == Optimality::Exact);
    }
    CHECK(min_cycle_transversal(graph(2, {{1, 2, "1"}})).size() == 0);
  }

  TEST_CASE("transversal matches exhaustive search; packing <= covering") {
    RandomSpec spec;
    spec.seed = 23;
    spec.order_max = 8;
    spec.arc_probability = 0.45;
    for (std::size_t i = 0; i < 40; ++i) {
      auto d = random_instance(spec, i);
      auto t = min_cycle_transversal(d);
      CHECK(t.optimality == Optimality::Exact);
      CHECK(is_cycle_transversal(d, t.vertices));
      CHECK(t.size() == brute_fvs_size(d));
      CHECK(disjoint_cycle_packing(d).size() <= t.size());
    }
  }

  TEST_CASE("cycle length extremes") {
    Example2Params p;
    p.exponent = 0.75;
    auto ex2 = build_example2(p);
    for (std::size_t n : {2, 5, 9}) {
      auto e = ell_extremes(truncate(ex2, n));
      CHECK(*e.ell_min == 2);
      CHECK(*e.ell_max == 2);
    }
    auto t = ell_extremes(triangle());
    CHECK(*t.ell_min == 3);
    CHECK(*t.ell_max == 3);
    auto ex1 = build_example1(example1_geometric(Rational(1, 2)));
    auto e4 = ell_extremes(truncate(ex1, 4));
    CHECK(*e4.ell_min == 1);
    CHECK(*e4.ell_max == 4);
    CHECK(e4.ell_max_exact);
  }

  TEST_CASE("packing examples") {
    CHECK(disjoint_cycle_packing(graph(2, {{1, 1, "1/2"}, {2, 2, "1/2"}})).size() == 2);
    auto ex1 = build_example1(example1_geometric(Rational(1, 2)));
    CHECK(disjoint_cycle_packing(truncate(ex1, 9)).size() == 1);
    CHECK(disjoint_cycle_packing(complete3()).size() == 1);
  }

  TEST_CASE("cycle unions are pairwise disjoint") {
    auto d = graph(4, {{1, 1, "1/2"}, {2, 3, "1/2"}, {3, 2, "1/2"}, {4, 4, "1/3"}, {1, 2, "1/4"}, {3, 1, "1/4"}});
    auto unions = enumerate_cycle_unions(d);
    for (auto& u : unions) {
      std::set<VertexId> seen;
      std::size_t total = 0;
      for (auto& c : u.cycles) {
        total += c.length();
        for (auto v : c.vertices) CHECK(seen.insert(v).second);
      }
      CHECK(u.total_length() == total);
    }
    CHECK_THROWS_AS(enumerate_cycle_unions(complete3(), 2), BudgetExceeded);
  }
}
