#include <benchmark/benchmark.h>

#include <random>

#include "k3b/kernels.hpp"

using namespace k3b;

namespace {

// Entries p/q with |p| < 2^40 and q < 2^20, so products carry real bignums.
QMatrix random_matrix(size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  QMatrix m(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Rational x(Integer(static_cast<long>(rng() % (1ULL << 40)) - (1L << 39)), Integer(static_cast<long>(rng() % (1 << 20)) + 1));
      x.canonicalize();
      m(i, j) = x;
    }
  return m;
}

template <QMatrix (*F)(const QMatrix&, const QMatrix&)>
void BM_product(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  const QMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(F(a, b));
}

template <void (*F)(QMatrix&, size_t, size_t)>
void BM_eliminate(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  QMatrix a = random_matrix(n, 3);
  for (size_t j = 0; j < n; ++j) a(0, j) /= a(0, 0) == 0 ? Rational(1) : a(0, 0);
  a(0, 0) = 1;
  for (auto _ : state) {
    QMatrix w = a;
    F(w, 0, 0);
    benchmark::DoNotOptimize(w);
  }
}

template <void (*F)(size_t, const std::function<void(size_t)>&)>
void BM_for(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  const QMatrix a = random_matrix(8, 4);
  std::vector<Rational> out(n);
  for (auto _ : state) {
    F(n, [&](size_t i) {
      QMatrix p = a;
      for (size_t k = 0; k < 3; ++k) p = kernels::serial::matmul(p, a);
      out[i] = p(i % 8, 0);
    });
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

BENCHMARK(BM_product<kernels::matmul>)->Name("matmul/parallel")->Arg(16)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_product<kernels::serial::matmul>)->Name("matmul/serial")->Arg(16)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_product<kernels::congruence>)->Name("congruence/parallel")->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_product<kernels::serial::congruence>)->Name("congruence/serial")->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eliminate<kernels::eliminate_column>)->Name("eliminate/parallel")->Arg(64)->Arg(192)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eliminate<kernels::serial::eliminate_column>)->Name("eliminate/serial")->Arg(64)->Arg(192)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_for<kernels::parallel_for>)->Name("for/parallel")->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_for<kernels::serial::parallel_for>)->Name("for/serial")->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
