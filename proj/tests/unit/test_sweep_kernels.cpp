#include "helpers.hpp"

#include "stochgraph/constructions.hpp"
#include "stochgraph/families_registry.hpp"
#include "stochgraph/kernels.hpp"
#include "stochgraph/random_instances.hpp"
#include "stochgraph/sweep.hpp"

#include <doctest.h>

#include <atomic>

using namespace stochgraph;
using namespace testing;

TEST_SUITE("sweep") {
  TEST_CASE("fit recovers an exact power law") {
    std::vector<std::pair<double, double>> s;
    for (double n = 10; n <= 1e5; n *= 1.7) s.emplace_back(n, std::pow(n, -0.5));
    auto f = fit_decay(s);
    CHECK(f.slope == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK(f.points == s.size());
    CHECK(f.residual_rms < 1e-9);
  }

  TEST_CASE("log correction separates (log n)/n") {
    std::vector<std::pair<double, double>> s;
    for (double n = 100; n <= 1e7; n *= 1.5) s.emplace_back(n, std::log(n) / n);
    auto plain = fit_decay(s);
    CHECK(plain.slope > -1.0);
    CHECK(plain.slope < -0.8);
    auto corrected = fit_decay(s, true);
    CHECK(corrected.slope == doctest::Approx(-1.0).epsilon(1e-6));
    REQUIRE(corrected.log_coefficient);
    CHECK(*corrected.log_coefficient == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("fit preconditions") {
    std::vector<std::pair<double, double>> two{{1, 1}, {2, 0.5}};
    CHECK_THROWS(fit_decay(two));
    std::vector<std::pair<double, double>> bad{{1, 1}, {2, 0.5}, {3, 0.0}};
    CHECK_THROWS(fit_decay(bad));
  }

  TEST_CASE("empty grid gives an empty table") {
    SweepSpec spec;
    auto r = run_sweep(make_family("example2"), spec);
    CHECK(r.rows.empty());
    CHECK(sweep_csv(r).rfind("# stochgraph-sweep v1", 0) == 0);
  }

  TEST_CASE("grid must be strictly increasing") {
    SweepSpec spec;
    spec.n_grid = {10, 10};
    CHECK_THROWS_AS(run_sweep(make_family("example2"), spec), SweepError);
  }

  TEST_CASE("example 2 sweep decays like n^-1/2") {
    SweepSpec spec;
    spec.n_grid = {100, 1000, 10000};
    spec.omega = spec.fvs = false;
    auto r = run_sweep(make_family("example2", {{"exponent", 0.75}}), spec);
    std::vector<std::pair<double, double>> s;
    for (auto& row : r.rows) s.emplace_back(static_cast<double>(row.n), *row.gap_to_limit);
    auto f = fit_decay(s);
    CHECK(f.slope > -0.6);
    CHECK(f.slope < -0.4);
  }

  TEST_CASE("example 1 sweep keeps n(1 - lambda_n) away from zero") {
    SweepSpec spec;
    spec.n_grid = {10, 30, 100, 300};
    auto r = run_sweep(make_family("example1"), spec);
    for (auto& row : r.rows) {
      CHECK(row.error.empty());
      CHECK(*row.n_one_minus_lambda_n > 0.19);
      CHECK(*row.fvs_size == 1);
    }
  }

  TEST_CASE("identical spec and seed give byte-identical output") {
    SweepSpec spec;
    spec.n_grid = {2, 5, 9, 17};
    spec.seed = 12;
    auto f = make_family("corollary1");
    auto a = sweep_csv(run_sweep(f, spec));
    auto b = sweep_csv(run_sweep(f, spec));
    spec.exec = Exec::Parallel;
    auto c = sweep_csv(run_sweep(f, spec));
    CHECK(a == b);
    CHECK(a == c);
    CHECK(sweep_json(run_sweep(f, spec))["rows"].size() == 4);
  }
}

TEST_SUITE("kernels") {
  TEST_CASE("parallel matvec is bitwise identical to the serial reference") {
    RandomSpec spec;
    spec.order_min = 50;
    spec.order_max = 120;
    spec.arc_probability = 0.1;
    spec.strong = false;
    for (std::size_t i = 0; i < 5; ++i) {
      auto a = CsrMatrix::from_digraph(random_instance(spec, i));
      std::vector<double> x(a.rows), ys, yp;
      for (std::size_t k = 0; k < a.rows; ++k) x[k] = 1.0 / static_cast<double>(k + 3);
      matvec_serial(a, x, ys, 0.25);
      matvec_parallel(a, x, yp, 0.25);
      CHECK(ys == yp);
      auto rs = ratio_bounds(x, ys, Exec::Serial), rp = ratio_bounds(x, yp, Exec::Parallel);
      CHECK(rs.min == rp.min);
      CHECK(rs.max == rp.max);
      auto gs = green_partial_sums(a, 0, 1.0, 50, Exec::Serial);
      auto gp = green_partial_sums(a, 0, 1.0, 50, Exec::Parallel);
      CHECK(gs == gp);
    }
  }

  TEST_CASE("for_each_index visits every index once and propagates exceptions") {
    for (auto exec : {Exec::Serial, Exec::Parallel}) {
      std::vector<std::atomic<int>> hits(257);
      for_each_index(hits.size(), exec, [&](std::size_t i) { hits[i]++; });
      for (auto& h : hits) CHECK(h.load() == 1);
      CHECK_THROWS_AS(for_each_index(10, exec,
                                     [](std::size_t i) {
                                       if (i == 7) throw std::runtime_error("boom");
                                     }),
                      std::runtime_error);
    }
    CHECK(parallel_workers() >= 1);
  }

  TEST_CASE("CSR restriction relabels by position") {
    auto d = graph(3, {{1, 2, "1/2"}, {2, 3, "1/3"}, {3, 1, "1/4"}});
    auto a = CsrMatrix::from_digraph(d, {1, 2});
    CHECK(a.rows == 2);
    CHECK(a.nonzeros() == 1);
    CHECK(a.values[0] == doctest::Approx(1.0 / 3));
  }
}
