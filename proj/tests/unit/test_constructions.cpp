#include "helpers.hpp"

#include "stochgraph/constructions.hpp"
#include "stochgraph/cycles.hpp"
#include "stochgraph/spectral.hpp"

#include <doctest.h>

using namespace stochgraph;
using namespace testing;

namespace {

// Oracle for the cycle-gain inequality:
//   ((1 - e)/(1 - 2e))^l > (2^k (1 - e)/e)^L
// evaluated by expanding both sides as exact rationals.
bool inequality_one(std::size_t k, const Rational& e, std::uint64_t l, std::uint64_t previous_total) {
  Rational lhs = pow(Rational((1 - e) / (1 - 2 * e)), l);
  Rational base = Rational(1);
  base *= Rational(1u << k);
  Rational rhs = pow(Rational(base * (1 - e) / e), previous_total);
  return lhs > rhs;
}

// Doubling search from L + 1, kept independent of the library's own search.
std::uint64_t oracle_length(std::size_t k, const Rational& e, std::uint64_t previous_total) {
  std::uint64_t l = previous_total + 1;
  while (!inequality_one(k, e, l, previous_total)) l *= 2;
  return l;
}

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("example 1 telescopes exactly") {
    auto params = example1_geometric(Rational(2, 3), Rational(1, 3));
    auto f = build_example1(params);
    auto d = truncate(f, 201);
    CHECK(*d.weight(0, 0)->exact == Rational(1, 3) * params.exact_f(1));
    Rational along = 1;
    for (std::size_t n = 2; n <= 200; ++n) {
      along *= *d.weight(n - 2, n - 1)->exact;  // arc (n-1, n)
      CHECK(along * *d.weight(n - 1, 0)->exact == params.exact_f(n));
    }
    CHECK(classify_weighting(d).tag == WeightingTag::TruthlySubstochastic);
  }

  TEST_CASE("example 1 with a non-geometric rational sequence") {
    // f_n = 1/(n(n+1)) sums to 1; tails T_m = 1/(m+1).
    Example1Params p;
    p.exact_f = [](std::size_t n) { return Rational(1, static_cast<long>(n * (n + 1))); };
    p.f = [](std::size_t n) { return 1.0 / static_cast<double>(n * (n + 1)); };
    p.tail = [](std::size_t m) { return 1.0 / static_cast<double>(m + 1); };
    auto d = truncate(build_example1(p), 60);
    for (std::size_t n = 2; n <= 59; ++n) {
      std::vector<VertexId> cyc(n);
      for (std::size_t i = 0; i < n; ++i) cyc[i] = i;
      CHECK(*make_cycle(d, cyc).exact_weight == p.exact_f(n));
    }
  }

  TEST_CASE("example 2 closed form") {
    Example2Params p;
    p.exponent = 0.75;
    auto f = build_example2(p);
    for (std::size_t n : {2, 3, 10, 57, 100, 500}) CHECK(close(perron_root(truncate(f, n)), example2_b(0.75, n), 1e-10));
    // Gap formula against the difference of two closed forms.
    double lambda = *f.facts.lambda;
    CHECK(close(example2_gap(0.75, 50), lambda - example2_b(0.75, 50), 1e-12));
    Example2Params bad;
    bad.exponent = 0.5;
    CHECK_THROWS_AS(build_example2(bad), ConstructionError);
  }

  TEST_CASE("prop 1 examples") {
    SUBCASE("c_k = 1 - 1/l_k, l_k = 2^k") {
      Prop1Params p;
      p.target = [](std::size_t k) { return 1.0 - std::ldexp(1.0, -static_cast<int>(k)); };
      auto f = build_prop1(p);
      BeadedLayout layout{lengths_powers_of_two()};
      auto d = truncate(f, layout.order_through(10));
      double prev = 1e9;
      for (std::size_t k = 1; k <= 10; ++k) {
        auto head = layout.start(k);
        double l = std::ldexp(1.0, static_cast<int>(k));
        double w = d.weight(head, head + 1)->value;
        CHECK(close(std::pow(w, l), 1 - 1 / l, 1e-12));
        double scaled = l * (1 - w);
        CHECK(scaled < prev);
        prev = scaled;
      }
      CHECK(prev < 2e-3);
      CHECK(classify_weighting(d).tag == WeightingTag::TruthlySubstochastic);
    }
    SUBCASE("constant c: gains tend to 1") {
      Prop1Params p;
      p.target = [](std::size_t) { return 0.5; };
      auto f = build_prop1(p);
      BeadedLayout layout{lengths_powers_of_two()};
      auto d = truncate(f, layout.order_through(9));
      double prev = 0;
      for (std::size_t k = 1; k <= 9; ++k) {
        double w = d.weight(layout.start(k), layout.start(k) + 1)->value;
        CHECK(w > prev);
        prev = w;
      }
      CHECK(prev > 0.998);
    }
    SUBCASE("disjoint loops, c = 1/2") {
      Prop1Params p;
      p.length = lengths_constant(1);
      p.lengths_bounded = true;
      p.target = [](std::size_t) { return 0.5; };
      auto d = truncate(build_prop1(p), 12);
      for (VertexId v = 0; v < 12; ++v) CHECK(*d.weight(v, v)->exact == Rational(1, 2));
    }
    SUBCASE("a target that rounds to a unit weight is rejected") {
      Prop1Params p;
      p.target = [](std::size_t k) { return 1.0 - std::ldexp(1.0, -static_cast<int>(4 * k)); };
      auto f = build_prop1(p);
      CHECK_THROWS(truncate(f, BeadedLayout{lengths_powers_of_two()}.order_through(11)));
    }
  }

  TEST_CASE("gap target normalization") {
    auto g = gap_power_of_two();
    CHECK_FALSE(g.normalized());
    CHECK(g(3) == Rational(1, 8));

    // Non-monotone inside the checked range, monotone beyond it.
    GapTarget wobbly("wobbly", [](std::size_t n) {
      return Rational(n % 2 || n > 40 ? 1 : 3, static_cast<long>(2 * n + 1));
    });
    CHECK(wobbly.normalized());
    CHECK_FALSE(wobbly.normalization_note().empty());
    for (std::size_t n = 1; n <= 150; ++n) {
      CHECK(wobbly(n) <= wobbly.raw(n));
      CHECK(wobbly(n) < 1);
      CHECK(wobbly(n + 1) < wobbly(n));
      CHECK(wobbly(n) > 0);
    }
    auto inv = gap_inverse(1);  // g(1) = 1 needs normalizing
    CHECK(inv.normalized());
    CHECK(inv(1) < 1);
  }

  TEST_CASE("gap-target host: 1 - omega(D, n) < g(n)") {
    auto g = gap_power_of_two();
    Corollary1Params params;
    auto f = build_corollary1(g, params);
    for (std::size_t n = 1; n <= 12; ++n) {
      auto d = truncate(f, corollary1_horizon(params, n));
      auto best = omega(d, n, false).best;
      REQUIRE(best);
      CHECK(compare_gain_to(*best, 1 - g(n)) > 0);
      CHECK(classify_weighting(d).satisfies(WeightingTag::TruthlySubstochastic));
    }
    CHECK(f.facts.all_ones_pruitt);
  }

  TEST_CASE("gap-target host with constant tail lengths: omega tends to 1") {
    Corollary1Params params;
    params.length = lengths_increasing_then_constant({1, 2}, 3);
    params.lengths_bounded = true;
    auto g = gap_inverse(1);
    auto f = build_corollary1(g, params);
    BeadedLayout layout{params.length};
    double prev = 0;
    for (std::size_t k : {5, 10, 40, 160}) {
      double w = omega(truncate(f, layout.order_through(k)), 3, false).gain();
      CHECK(w > prev);
      CHECK(w >= 1 - 2.0 / static_cast<double>(k));
      prev = w;
    }
  }

  TEST_CASE("fast gap between lambda and omega") {
    auto g = gap_power_of_two();
    auto t = build_theorem2_fast(g);
    CHECK(t.c == Rational(1, 4));  // (1/2) g(1), l_min = 1
    CHECK(t.certificate.scope == "presentation");
    CHECK(t.certificate.verified_rows > 0);
    for (std::size_t n = 1; n <= 12; ++n) {
      auto lb = theorem2_lambda_n_lower_bound(t, n);
      REQUIRE(lb.exact);
      CHECK(t.c - *lb.exact < g(n));
      REQUIRE(lb.witness);
      CHECK(lb.witness->length() <= n);
    }
    // With g = n^-2 the normalized target governs c.
    auto t2 = build_theorem2_fast(gap_inverse(2));
    CHECK(t2.c < gap_inverse(2)(1));
  }

  TEST_CASE("prop 2 on the example 1 host") {
    auto pc = build_prop2(epsilon_power_of_four(6));
    REQUIRE(pc.cycles.size() == 6);
    CHECK(pc.cycles[0].length == 1);
    CHECK(pc.cycles[1].length == 64);
    CHECK(pc.cycles[2].length == 33792);

    // Independent oracle for the first selected lengths.
    std::uint64_t total = 1;
    for (std::size_t k = 2; k <= 3; ++k) {
      auto e = Rational(1, 1 << (2 * k));
      auto l = oracle_length(k, e, total);
      CHECK(pc.cycles[k - 1].length == l);
      CHECK_FALSE(inequality_one(k, e, l / 2, total));
      total += l;
    }
    for (auto& c : pc.cycles) {
      CHECK(c.inequality_holds);
      CHECK(c.gain_bound_holds);
      CHECK(c.log_gain.first <= c.log_gain.second);
      CHECK(c.log_gain.first >= std::log(1 - 2 * c.eps.get_d()) - 1e-15);
    }
    for (auto& w : pc.out_weights) CHECK(w.out_weight <= w.bound);
    CHECK(pc.gamma_tag == WeightingTag::StrictlySubstochastic);

    // gamma_2 evaluated directly on the Gamma-weighted truncation.
    auto d = truncate(pc.gamma_family, 64);
    std::vector<VertexId> cyc(64);
    for (std::size_t i = 0; i < 64; ++i) cyc[i] = i;
    auto g2 = make_cycle(d, cyc);
    CHECK(*g2.exact_weight >= pow(Rational(7, 8), 64));
    CHECK(classify_weighting(d).tag == WeightingTag::StrictlySubstochastic);
    for (VertexId v = 0; v < 64; ++v) {
      Rational eps = v == 0 ? Rational(1, 4) : Rational(1, 16);
      CHECK(d.out_weight<Rational>(v) <= 1 - eps / 2);
    }
    // The extension keeps vertex 1 slack and fills interior rows.
    auto full = truncate(pc.family, 64);
    CHECK(full.out_weight<Rational>(0) < 1);
    for (VertexId v = 1; v + 1 < 64; ++v) CHECK(full.out_weight<Rational>(v) == 1);
    CHECK(classify_weighting(full).tag == WeightingTag::TruthlySubstochastic);
  }

  TEST_CASE("prop 2 rejects bad schedules") {
    EpsilonSchedule s{"flat", [](std::size_t) { return Rational(1, 8); }, 3};
    CHECK_THROWS_AS(build_prop2(s), ConstructionError);
    EpsilonSchedule big{"big", [](std::size_t k) { return Rational(1, static_cast<long>(k + 1)); }, 3};
    CHECK_THROWS_AS(build_prop2(big), ConstructionError);
  }
}
