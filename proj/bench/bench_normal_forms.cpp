// Serial vs OpenMP elimination kernels on the matrices this project
// actually grinds through: the Phi(n) relation lattices and dense
// random integer matrices.

#include "fermat/int_matrix.hpp"
#include "fermat/manin.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using fermat::Exec;
using fermat::IntMatrix;

IntMatrix random_matrix(std::size_t rows, std::size_t cols, int bound,
                        unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

void bench_hnf_relation(benchmark::State& state, Exec exec) {
  const int n = static_cast<int>(state.range(0));
  IntMatrix rel = fermat::manin::relation_matrix(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fermat::hnf_basis(rel, exec));
  }
}

void bench_hnf_dense(benchmark::State& state, Exec exec) {
  const auto size = static_cast<std::size_t>(state.range(0));
  IntMatrix m = random_matrix(size, size / 2, 8, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fermat::hnf(m, exec));
  }
}

void bench_snf_dense(benchmark::State& state, Exec exec) {
  const auto size = static_cast<std::size_t>(state.range(0));
  IntMatrix m = random_matrix(size, size, 6, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fermat::snf(m, exec));
  }
}

void bench_mul(benchmark::State& state, Exec exec) {
  const auto size = static_cast<std::size_t>(state.range(0));
  IntMatrix a = random_matrix(size, size, 1000, 1);
  IntMatrix b = random_matrix(size, size, 1000, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fermat::mul(a, b, exec));
  }
}

}  // namespace

BENCHMARK_CAPTURE(bench_hnf_relation, serial, Exec::Serial)->Arg(6)->Arg(9)->Arg(12)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_hnf_relation, parallel, Exec::Parallel)->Arg(6)->Arg(9)->Arg(12)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_hnf_dense, serial, Exec::Serial)->Arg(96)->Arg(160)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_hnf_dense, parallel, Exec::Parallel)->Arg(96)->Arg(160)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_snf_dense, serial, Exec::Serial)->Arg(48)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_snf_dense, parallel, Exec::Parallel)->Arg(48)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_mul, serial, Exec::Serial)->Arg(128)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_mul, parallel, Exec::Parallel)->Arg(128)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
