#include "helpers.hpp"

#include "stochgraph/classification.hpp"
#include "stochgraph/constructions.hpp"
#include "stochgraph/families_registry.hpp"
#include "stochgraph/perron_number.hpp"
#include "stochgraph/random_instances.hpp"
#include "stochgraph/spectral.hpp"

#include <doctest.h>

#include <random>

using namespace stochgraph;
using namespace testing;

TEST_SUITE("classification") {
  TEST_CASE("Pruitt vectors") {
    auto d = two_cycle("1", "1/2");  // truthly substochastic; use lambda = 1
    auto c = pruitt_certificate(d, Rational(1));
    REQUIRE(c);
    CHECK(*c->exact_xi == std::vector<Rational>{1, 1});
    CHECK(c->strict_vertex == 1);

    // Stochastic and irreducible: no vector can be strict anywhere.
    CHECK_FALSE(pruitt_certificate(two_cycle("1", "1"), Rational(1)));
    CHECK_FALSE(pruitt_certificate(two_cycle("1", "1"), 1.0));
    // One-dimensional equality has no strict row.
    CHECK_FALSE(pruitt_certificate(loop("0.7"), Rational(7, 10)));
  }

  TEST_CASE("every returned certificate re-verifies exactly") {
    RandomSpec spec;
    spec.seed = 2;
    spec.order_max = 6;
    for (std::size_t i = 0; i < 30; ++i) {
      auto d = random_instance(spec, i);
      // Any lambda above the Perron root admits a strict vector.
      ExactPerron p(d);
      Rational lambda = p.upper() + Rational(1, 100);
      auto c = pruitt_certificate(d, lambda);
      REQUIRE(c);
      VertexId strict = 0;
      CHECK(verify_pruitt(d, *c->exact_xi, lambda, &strict));
      for (auto x : *c->exact_xi) CHECK(x > 0);
    }
  }

  TEST_CASE("similarity scaling examples") {
    auto d = graph(3, {{1, 2, "1/2"}, {2, 3, "1/3"}, {3, 1, "1/4"}, {1, 1, "1/5"}});
    CHECK(similarity_scale(d, std::vector<Rational>{1, 1, 1}, Rational(1)) == d);

    auto l = similarity_scale(loop("0.7"), std::vector<Rational>{1}, Rational(7, 10));
    CHECK(*l.weight(0, 0)->exact == 1);

    auto s = similarity_scale(two_cycle("4", "1"), std::vector<Rational>{1, 2}, Rational(2));
    CHECK(*s.weight(0, 1)->exact == 4);
    CHECK(*s.weight(1, 0)->exact == Rational(1, 4));
    CHECK(perron_root(s) * 2 == doctest::Approx(perron_root(two_cycle("4", "1"))).epsilon(1e-12));
  }

  TEST_CASE("scaling invariant for random positive xi") {
    RandomSpec spec;
    spec.seed = 77;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (std::size_t i = 0; i < 30; ++i) {
      auto d = random_instance(spec, i);
      std::vector<double> xi(d.order());
      for (auto& x : xi) x = u(rng);
      double lambda = u(rng);
      auto s = similarity_scale(d.floating(), xi, lambda);
      CHECK(close(perron_root(s) * lambda, perron_root(d), 1e-10));
    }
  }

  TEST_CASE("Cyr criterion") {
    StructuralMetadata ex1;
    ex1.transversal = std::vector<VertexId>{0};
    ex1.ell_max = Extent::infinite();
    CHECK_FALSE(cyr_criterion(ex1));

    StructuralMetadata ex2;
    ex2.transversal = std::vector<VertexId>{0};
    ex2.ell_max = Extent::finite(2);
    CHECK(cyr_criterion(ex2));

    StructuralMetadata m;
    m.sct_size = Extent::infinite();
    m.ell_max = Extent::finite(2);
    CHECK_FALSE(cyr_criterion(m));

    CHECK_THROWS_AS(cyr_criterion(StructuralMetadata{}), MetadataError);
    StructuralMetadata half;
    half.sct_size = Extent::finite(1);
    CHECK_THROWS_AS(cyr_criterion(half), MetadataError);
  }

  TEST_CASE("verdicts") {
    auto ex2 = classify(make_family("example2"));
    CHECK(ex2.verdict == Verdict::Recurrent);
    CHECK(ex2.confidence == Confidence::Certified);
    CHECK(std::holds_alternative<CyrStructural>(ex2.evidence));

    auto lp = classify(make_family("loop"));
    CHECK(lp.verdict == Verdict::Recurrent);
    CHECK(lp.confidence == Confidence::Numerical);
    REQUIRE(std::holds_alternative<DivergingSeries>(lp.evidence));
    auto& ds = std::get<DivergingSeries>(lp.evidence);
    // M^p lambda^-p = 1, so G_P = P + 1 exactly.
    REQUIRE(ds.exact_last);
    CHECK(*ds.exact_last == Rational(static_cast<long>(ds.partial_sums.back().first + 1)));
    for (auto [p, g] : ds.partial_sums) CHECK(g == static_cast<double>(p + 1));

    auto p1 = classify(make_family("prop1"));
    CHECK(p1.verdict == Verdict::Transient);
    CHECK(p1.confidence == Confidence::Certified);
    REQUIRE(std::holds_alternative<PruittCertificate>(p1.evidence));
    auto& cert = std::get<PruittCertificate>(p1.evidence);
    CHECK(cert.scope == "presentation");
    for (double x : cert.xi) CHECK(x == 1.0);
  }

  TEST_CASE("never transient when the Cyr criterion holds") {
    for (const char* params : {R"({"exponent": 0.75})", R"({"prefix": ["1/2", "1/3"]})", R"({"exponent": 2})"}) {
      ClassifyOptions o;
      o.n_max = 30;
      o.p_max = 200;
      auto v = classify(make_family("example2", nlohmann::json::parse(params)), o);
      CHECK(v.verdict != Verdict::Transient);
    }
  }

  TEST_CASE("Green partial sums are monotone in P and n") {
    auto f = build_example1(example1_geometric(Rational(1, 2)));
    std::vector<double> prev;
    for (std::size_t n : {3, 6, 12}) {
      auto a = CsrMatrix::from_digraph(truncate(f, n));
      auto g = green_partial_sums(a, 0, 1.0, 300, Exec::Serial);
      for (std::size_t p = 1; p < g.size(); ++p) CHECK(g[p] >= g[p - 1]);
      for (std::size_t p = 0; p < prev.size(); ++p) CHECK(g[p] >= prev[p]);
      prev = g;
    }
  }
}
