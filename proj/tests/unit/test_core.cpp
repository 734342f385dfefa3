#include "helpers.hpp"

#include "stochgraph/constructions.hpp"
#include "stochgraph/digraph_io.hpp"
#include "stochgraph/polynomial.hpp"
#include "stochgraph/random_instances.hpp"

#include <doctest.h>

using namespace stochgraph;
using namespace testing;

TEST_SUITE("rational") {
  TEST_CASE("parsing is exact") {
    CHECK(parse_rational("0.7") == Rational(7, 10));
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-2") == Rational(-2));
    CHECK(parse_rational("2.5e-3") == Rational(1, 400));
    CHECK(to_string(Rational(6, 4)) == "3/2");
    CHECK(to_string(Rational(4, 2)) == "2");
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational("1/0"));
  }

  TEST_CASE("doubles convert to their exact binary value") {
    CHECK(exact_from_double(0.5) == Rational(1, 2));
    CHECK(exact_from_double(0.1) != Rational(1, 10));
    CHECK(exact_from_double(0.1).get_d() == 0.1);
  }

  TEST_CASE("decimal round trip") {
    for (double x : {0.1, 1.0 / 3.0, 2.5e-300, 1e22}) CHECK(std::stod(to_decimal_string(x)) == x);
  }
}

TEST_SUITE("polynomial") {
  TEST_CASE("arithmetic and trimming") {
    RationalPolynomial p({Rational(1), Rational(-1)});  // 1 - z
    RationalPolynomial q({Rational(1), Rational(1)});   // 1 + z
    auto r = p * q;
    CHECK(r == RationalPolynomial({Rational(1), Rational(0), Rational(-1)}));
    CHECK((p - p).is_zero());
    CHECK((p - p).degree() == -1);
    CHECK(r(Rational(1, 2)) == Rational(3, 4));
  }

  TEST_CASE("gcd and square-free part") {
    RationalPolynomial a({Rational(-1), Rational(1)});  // z - 1
    RationalPolynomial b({Rational(2), Rational(1)});   // z + 2
    auto g = gcd(a * a * b, a * b * b);
    CHECK(g == make_monic(a * b));
    CHECK(square_free_part(a * a * b) == make_monic(a * b));
  }

  TEST_CASE("Sturm root counting") {
    // (z - 1/2)(z - 1)(z + 3)
    RationalPolynomial p = RationalPolynomial({Rational(-1, 2), Rational(1)}) *
                           RationalPolynomial({Rational(-1), Rational(1)}) *
                           RationalPolynomial({Rational(3), Rational(1)});
    SturmSequence s(p);
    CHECK(s.count_roots(Rational(0), Rational(2)) == 2);
    CHECK(s.count_roots(Rational(-4), Rational(0)) == 1);
    CHECK(s.count_roots(Rational(1, 2), Rational(1)) == 1);  // half-open (a, b]
    CHECK(s.count_roots_above(Rational(1)) == 0);
  }

  TEST_CASE("interpolation recovers a cubic") {
    RationalPolynomial p({Rational(1), Rational(0), Rational(-2, 3), Rational(5)});
    std::vector<Rational> xs{Rational(0), Rational(1), Rational(2), Rational(-1)}, ys;
    for (auto& x : xs) ys.push_back(p(x));
    CHECK(interpolate(xs, ys) == p);
  }

  TEST_CASE("elementary symmetric polynomials") {
    std::vector<Rational> v{Rational(1), Rational(2), Rational(3)};
    CHECK(elementary_symmetric(v, 0) == 1);
    CHECK(elementary_symmetric(v, 1) == 6);
    CHECK(elementary_symmetric(v, 2) == 11);
    CHECK(elementary_symmetric(v, 3) == 6);
  }
}

TEST_SUITE("digraph") {
  TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(WeightedDigraph(2, {{0, 1, Rational(1)}, {0, 1, Rational(1, 2)}}), DigraphError);
    CHECK_THROWS_AS(WeightedDigraph(2, {{0, 2, Rational(1)}}), DigraphError);
    CHECK_THROWS_AS(WeightedDigraph(2, {{0, 1, Rational(0)}}), DigraphError);
    CHECK_THROWS_AS(WeightedDigraph(2, {{0, 1, Rational(-1)}}), DigraphError);
  }

  TEST_CASE("weighting classes") {
    CHECK(classify_weighting(loop("1")).tag == WeightingTag::Stochastic);
    CHECK(classify_weighting(two_cycle("0.9", "0.9")).tag == WeightingTag::StrictlySubstochastic);
    CHECK(classify_weighting(two_cycle("1", "1/2")).tag == WeightingTag::TruthlySubstochastic);
    CHECK(classify_weighting(two_cycle("3/2", "1/2")).tag == WeightingTag::NotSubstochastic);
    CHECK(*classify_weighting(two_cycle("3/2", "1/2")).witness == 0);

    // Example 1, a = 1/2, f_n = 2^-n: vertex 1 has out-weight 1/4 + 1/2 = 3/4.
    auto ex1 = build_example1(example1_geometric(Rational(1, 2)));
    auto d = truncate(ex1, 8);
    CHECK(d.out_weight<Rational>(0) == Rational(3, 4));
    for (VertexId v = 1; v + 1 < 8; ++v) CHECK(d.out_weight<Rational>(v) == 1);
    auto c = classify_weighting(d);
    CHECK(c.tag == WeightingTag::TruthlySubstochastic);
    CHECK(*c.witness == 0);
  }

  TEST_CASE("tag implications") {
    WeightingClass s{WeightingTag::StrictlySubstochastic, 0};
    CHECK(s.satisfies(WeightingTag::TruthlySubstochastic));
    CHECK(s.satisfies(WeightingTag::Substochastic));
    WeightingClass st{WeightingTag::Stochastic, std::nullopt};
    CHECK(st.satisfies(WeightingTag::Substochastic));
    CHECK_FALSE(st.satisfies(WeightingTag::TruthlySubstochastic));
  }

  TEST_CASE("adding mass never makes the class stricter") {
    auto rank = [](WeightingTag t) {
      switch (t) {
        case WeightingTag::StrictlySubstochastic: return 0;
        case WeightingTag::TruthlySubstochastic: return 1;
        case WeightingTag::Stochastic:
        case WeightingTag::Substochastic: return 2;
        default: return 3;
      }
    };
    RandomSpec spec;
    spec.seed = 11;
    for (std::size_t i = 0; i < 40; ++i) {
      auto d = random_instance(spec, i);
      auto before = rank(classify_weighting(d).tag);
      auto heavier = d.reweighted([&](const Arc& a) { return Weight(*a.weight.exact + Rational(1, 16)); });
      CHECK(rank(classify_weighting(heavier).tag) >= before);
    }
  }

  TEST_CASE("strong connectivity") {
    CHECK(is_strongly_connected(loop("1/2")));
    CHECK_FALSE(is_strongly_connected(graph(2, {{1, 2, "1"}})));
    auto ex1 = build_example1(example1_geometric(Rational(1, 2)));
    CHECK(is_strongly_connected(truncate(ex1, 5)));
    CHECK(is_acyclic(graph(3, {{1, 2, "1"}, {2, 3, "1"}, {1, 3, "1"}})));
    CHECK_FALSE(is_acyclic(loop("1/2")));
  }

  TEST_CASE("json round trip") {
    auto d = graph(3, {{1, 2, "1/3"}, {2, 3, "0.25"}, {3, 1, "7"}});
    auto j = digraph_to_json(d);
    CHECK(digraph_from_json(j) == d);
    auto f = digraph_from_json(nlohmann::json::parse(R"({"order":2,"arcs":[[1,2,0.5],[2,1,"1/2"]]})"));
    CHECK_FALSE(f.is_exact());
    CHECK(f.weight(0, 1)->value == 0.5);
  }
}

TEST_SUITE("family") {
  TEST_CASE("example 2 truncations") {
    Example2Params p;
    p.exponent = 0.75;
    auto f = build_example2(p);
    auto one = truncate(f, 1);
    CHECK(one.order() == 1);
    CHECK(one.arc_count() == 0);
    auto three = truncate(f, 3);
    CHECK(three.arc_count() == 4);
    CHECK(three.weight(0, 1)->value == 1.0);
    CHECK(three.weight(1, 0)->value == 1.0);
    CHECK(three.weight(0, 2)->value == doctest::Approx(std::pow(2.0, -0.75)).epsilon(1e-15));
    CHECK(three.weight(2, 0)->value == doctest::Approx(std::pow(2.0, -0.75)).epsilon(1e-15));
    CHECK_THROWS_AS(truncate(f, 0), FamilyError);
  }

  TEST_CASE("example 1 truncation of order 2") {
    auto f = build_example1(example1_geometric(Rational(1, 2)));
    auto d = truncate(f, 2);
    CHECK(d.arc_count() == 3);
    CHECK(d.has_arc(0, 0));
    CHECK(d.has_arc(0, 1));
    CHECK(d.has_arc(1, 0));
  }

  TEST_CASE("metadata validation") {
    auto ex1 = build_example1(example1_geometric(Rational(1, 2)));
    CHECK(validate_metadata(ex1, 50).empty());
    Example2Params p;
    p.exponent = 0.75;
    CHECK(validate_metadata(build_example2(p), 50).empty());

    auto wrong = ex1;
    wrong.metadata.ell_max = Extent::finite(3);
    auto v = validate_metadata(wrong, 5);
    REQUIRE_FALSE(v.empty());
    CHECK(v.front().n == 4);
  }

  TEST_CASE("nesting holds for the built-in families") {
    Example2Params p;
    p.exponent = 0.75;
    CHECK(check_nesting(build_example2(p), 30).empty());
    CHECK(check_nesting(build_example1(example1_geometric(Rational(1, 3))), 30).empty());
    CHECK(check_nesting(build_example1(example1_power(0.5)), 30).empty());
    CHECK(check_nesting(build_corollary1(gap_power_of_two()), 40).empty());
  }

  TEST_CASE("a non-nested generator is detected") {
    TruncationFamily f;
    f.name = "broken";
    f.generator = [](std::size_t n) {
      DigraphBuilder b(n);
      b.arc(0, n - 1, Rational(1, static_cast<long>(n)));
      return b.build();
    };
    CHECK_FALSE(check_nesting(f, 5).empty());
  }
}

TEST_SUITE("random") {
  TEST_CASE("seeded stream is deterministic and index-addressable") {
    RandomSpec spec;
    spec.seed = 42;
    spec.order_max = 7;
    for (std::size_t i = 0; i < 20; ++i) {
      auto a = random_instance(spec, i), b = random_instance(spec, i);
      CHECK(a == b);
      CHECK(fingerprint(a) == fingerprint(b));
      CHECK(a.order() <= 7);
      CHECK(is_strongly_connected(a));
      CHECK(classify_weighting(a).satisfies(WeightingTag::TruthlySubstochastic));
    }
    spec.seed = 43;
    CHECK(fingerprint(random_instance(spec, 3)) != fingerprint(random_instance(RandomSpec{42, 1, 7}, 3)));
  }
}
