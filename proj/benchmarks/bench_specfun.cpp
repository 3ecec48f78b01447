#include <benchmark/benchmark.h>

#include "hdecay/specfun.hpp"

namespace sf = hdecay::specfun;

template <double (*F)(double)>
static void BM_Special(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0)) / 8.0;
  for (auto _ : state) benchmark::DoNotOptimize(F(x));
}

BENCHMARK(BM_Special<sf::sin_integral>)->Name("sin_integral")->Arg(4)->Arg(80)->Arg(8000);
BENCHMARK(BM_Special<sf::cin>)->Name("cin")->Arg(4)->Arg(80)->Arg(8000);
BENCHMARK(BM_Special<sf::expei_scaled>)->Name("expei_scaled")->Arg(4)->Arg(80)->Arg(8000);
BENCHMARK(BM_Special<sf::e1_scaled>)->Name("e1_scaled")->Arg(4)->Arg(80)->Arg(8000);

BENCHMARK_MAIN();
