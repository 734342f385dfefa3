#include "helpers.hpp"

#include "stochgraph/constructions.hpp"
#include "stochgraph/inequalities.hpp"
#include "stochgraph/random_instances.hpp"
#include "stochgraph/spectral.hpp"

#include <doctest.h>

using namespace stochgraph;
using namespace testing;

namespace {

bool has_equality(const InequalityReport& r) {
  return r.min_margin_exact && *r.min_margin_exact == 0;
}

// Oracle for a random instance: resolvent diagonal by Cramer's rule,
// G(v,v) = det(I - S^(v)) / det(I - S), independent of Gauss-Jordan.
Rational cramer_diag(const WeightedDigraph& d, VertexId v) {
  auto m = identity_minus(d.adjacency<Rational>(), Rational(1));
  return determinant(m.without(v)) / determinant(m);
}

}  // namespace

TEST_SUITE("inequalities") {
  TEST_CASE("Boyle-Handelman examples") {
    auto l = check_boyle_handelman(loop("0.7"), Mode::Exact);
    CHECK(l.passed());
    CHECK(has_equality(l));
    auto c = check_boyle_handelman(two_cycle("1/2", "1/2"), Mode::Exact);
    CHECK(c.passed());
    CHECK(has_equality(c));
    CHECK(check_boyle_handelman(two_cycle("1/2", "1/2"), Mode::Float).passed());
  }

  TEST_CASE("KSV examples") {
    CHECK(check_ksv(loop("0.7"), Mode::Exact).passed());
    auto acyclic = check_ksv(graph(3, {{1, 2, "1"}, {2, 3, "1/2"}}), Mode::Exact);
    CHECK(acyclic.passed());
    CHECK(acyclic.skipped == 0);
  }

  TEST_CASE("transversal product bound with a singleton transversal is an equality") {
    auto d = graph(3, {{1, 2, "1/2"}, {2, 3, "1/2"}, {3, 1, "1/2"}, {1, 1, "1/4"}});
    TransversalResult w;
    w.vertices = {0};
    auto r = check_lemma_a2(d, w, Mode::Exact);
    CHECK(r.passed());
    CHECK(has_equality(r));
  }

  TEST_CASE("example 1 truncations: vertex 1 dominates the diagonal") {
    auto f = build_example1(example1_geometric(Rational(1, 2)));
    auto d5 = truncate(f, 5);
    auto g = resolvent<Rational>(d5);
    for (VertexId v = 0; v < 5; ++v) CHECK(g(v, v) <= g(0, 0));
    TransversalResult w;
    w.vertices = {0};
    CHECK(check_lemma_a2(d5, w, Mode::Exact).passed());
    CHECK(test_max_diag_conjecture(d5, Mode::Exact).findings.empty());

    // With h = 1, 1/det(I - S) = G(1,1) exactly.
    auto d4 = truncate(f, 4);
    CHECK(1 / det_I_minus<Rational>(d4) == resolvent_diag<Rational>(d4, 0));
    auto r = check_a1_product(d4, w, Mode::Exact);
    CHECK(r.passed());
    CHECK(has_equality(r));
  }

  TEST_CASE("one-vertex digraph") {
    auto d = loop("1/3");
    TransversalResult w;
    w.vertices = {0};
    auto r = check_a1_product(d, w, Mode::Exact);
    CHECK(r.passed());
    CHECK(has_equality(r));
    CHECK(test_max_diag_conjecture(d, Mode::Exact).findings.empty());
  }

  TEST_CASE("zeta identity") {
    auto d = triangle("1/2", "2", "3");  // det(I - zS) = 1 - 3z^3 vanishes nowhere in the samples
    for (VertexId v = 0; v < 3; ++v) {
      auto r = check_zeta_identity(d, v, {Rational(1, 3), Rational(1, 2), Rational(2)}, Mode::Exact);
      CHECK(r.passed());
      CHECK(r.comparisons == 3);
    }
    // z = 1 is singular for a stochastic loop: skipped, not a violation.
    auto s = check_zeta_identity(loop("1"), 0, {Rational(1)}, Mode::Exact);
    CHECK(s.passed());
    CHECK(s.comparisons == 0);
    CHECK(s.notes.size() == 1);
  }

  TEST_CASE("the library resolvent matches Cramer's rule") {
    RandomSpec spec;
    spec.seed = 101;
    spec.order_max = 7;
    for (std::size_t i = 0; i < 15; ++i) {
      auto d = random_instance(spec, i);
      auto g = resolvent<Rational>(d);
      for (VertexId v = 0; v < d.order(); ++v) CHECK(g(v, v) == cramer_diag(d, v));
    }
  }

  TEST_CASE("exact mode rejects floating-only input") {
    CHECK_THROWS_AS(check_ksv(loop("1/2").floating(), Mode::Exact), InequalityError);
  }

  TEST_CASE("random suites") {
    for (auto suite : {Suite::BoyleHandelman, Suite::Ksv, Suite::LemmaA1, Suite::LemmaA2, Suite::A1Product,
                       Suite::SigmaK, Suite::Zeta, Suite::Prop3}) {
      CAPTURE(to_string(suite));
      SuiteOptions o;
      o.count = 40;
      o.instances.order_max = 7;
      o.agreement_instances = 40;
      auto r = run_suite(suite, o);
      CHECK(r.passed());
      CHECK(r.instances_tested + r.skipped >= 40);
      CHECK(r.agreement_checked > 0);
      CHECK(r.min_margin.has_value());
      CHECK(*r.min_margin >= -1e-9);
    }
  }

  TEST_CASE("parallel suites match serial ones") {
    SuiteOptions o;
    o.count = 25;
    o.instances.seed = 4;
    auto a = run_suite(Suite::LemmaA1, o);
    o.exec = Exec::Parallel;
    auto b = run_suite(Suite::LemmaA1, o);
    CHECK(a.signs == b.signs);
    CHECK(a.min_margin == b.min_margin);
  }

  TEST_CASE("conjecture misses are findings, not failures") {
    SuiteOptions o;
    o.count = 60;
    auto r = run_suite(Suite::Conjecture, o);
    CHECK(r.passed());
    CHECK(r.violations.empty());
  }

  TEST_CASE("suite names round trip") {
    for (auto s : {Suite::BoyleHandelman, Suite::Ksv, Suite::LemmaA1, Suite::LemmaA2, Suite::A1Product, Suite::SigmaK,
                   Suite::Zeta, Suite::Conjecture, Suite::Prop3})
      CHECK(parse_suite(to_string(s)) == s);
    CHECK_THROWS(parse_suite("nope"));
  }
}
