// Serial reference kernels against their OpenMP counterparts on the
// Example 1 path-with-back-arcs and on dense random digraphs.

#include "stochgraph/constructions.hpp"
#include "stochgraph/kernels.hpp"
#include "stochgraph/spectral.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace stochgraph;

namespace {

CsrMatrix random_csr(std::size_t n, std::size_t per_row) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> col(0, n - 1);
  std::uniform_real_distribution<double> w(0.0, 1.0 / static_cast<double>(per_row));
  DigraphBuilder b(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t k = 0; k < per_row; ++k) b.arc(u, col(rng), Weight(w(rng)));
  return CsrMatrix::from_digraph(b.build());
}

void matvec_bench(benchmark::State& state, Exec exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  CsrMatrix a = random_csr(n, 16);
  std::vector<double> x(n, 1.0), y(n);
  for (auto _ : state) {
    if (exec == Exec::Serial)
      matvec_serial(a, x, y, 0.5);
    else
      matvec_parallel(a, x, y, 0.5);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.nonzeros()));
}

void BM_MatvecSerial(benchmark::State& s) { matvec_bench(s, Exec::Serial); }
void BM_MatvecParallel(benchmark::State& s) { matvec_bench(s, Exec::Parallel); }

void green_bench(benchmark::State& state, Exec exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto f = build_example1(example1_power(0.5));
  CsrMatrix a = CsrMatrix::from_digraph(truncate(f, n));
  for (auto _ : state) benchmark::DoNotOptimize(green_partial_sums(a, 0, 1.0, 200, exec));
}

void BM_GreenSerial(benchmark::State& s) { green_bench(s, Exec::Serial); }
void BM_GreenParallel(benchmark::State& s) { green_bench(s, Exec::Parallel); }

void perron_bench(benchmark::State& state, Exec exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto f = build_example2({.exponent = 0.75});
  WeightedDigraph d = truncate(f, n);
  PerronOptions po;
  po.exec = exec;
  for (auto _ : state) benchmark::DoNotOptimize(perron_root_report(d, po).value);
}

void BM_PerronSerial(benchmark::State& s) { perron_bench(s, Exec::Serial); }
void BM_PerronParallel(benchmark::State& s) { perron_bench(s, Exec::Parallel); }

}  // namespace

BENCHMARK(BM_MatvecSerial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_MatvecParallel)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_GreenSerial)->Arg(1000)->Arg(50000);
BENCHMARK(BM_GreenParallel)->Arg(1000)->Arg(50000);
BENCHMARK(BM_PerronSerial)->Arg(1000)->Arg(100000);
BENCHMARK(BM_PerronParallel)->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();
