#include <benchmark/benchmark.h>

#include <cmath>

#include "hdecay/closedform.hpp"
#include "hdecay/quadrature.hpp"

using namespace hdecay;

static void BM_IntegrateExact(benchmark::State& state) {
  const auto p = model::derive_params();
  const double t = std::pow(10.0, static_cast<double>(state.range(0))) / p.omegaX;
  for (auto _ : state) benchmark::DoNotOptimize(quadrature::integrate_exact(p, t, 1e-10));
}
BENCHMARK(BM_IntegrateExact)->DenseRange(-2, 6, 2)->Unit(benchmark::kMicrosecond);

static void BM_IntegrateTruncatedDipole(benchmark::State& state) {
  const auto p = model::derive_params();
  const double wc = closedform::matched_cutoff(p);
  for (auto _ : state) benchmark::DoNotOptimize(quadrature::integrate_truncated_dipole(p, wc, 1e-16, 1e-10));
}
BENCHMARK(BM_IntegrateTruncatedDipole)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
