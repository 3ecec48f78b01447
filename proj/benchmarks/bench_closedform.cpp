#include <benchmark/benchmark.h>

#include <cmath>

#include "hdecay/analysis.hpp"
#include "hdecay/closedform.hpp"

using namespace hdecay;

static void BM_ExactIF(benchmark::State& state) {
  const auto ctx = analysis::hydrogen_context();
  const double t = std::pow(10.0, static_cast<double>(state.range(0))) / ctx.params.omegaX;
  for (auto _ : state) benchmark::DoNotOptimize(closedform::exact_IF(ctx.params, ctx.coeffs, t));
}
BENCHMARK(BM_ExactIF)->DenseRange(-3, 6, 3);

static void BM_TruncatedDipole(benchmark::State& state) {
  const auto ctx = analysis::hydrogen_context();
  const double wc = closedform::matched_cutoff(ctx.params);
  for (auto _ : state) benchmark::DoNotOptimize(closedform::truncated_dipole_closed(ctx.params, wc, 1e-17));
}
BENCHMARK(BM_TruncatedDipole);

static void BM_SampleCurve(benchmark::State& state) {
  const auto ctx = analysis::hydrogen_context();
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        analysis::sample_curve(analysis::ModelId::exact(), ctx, 1e-20, 1e-13, 2000, analysis::Spacing::log, threads));
  }
}
BENCHMARK(BM_SampleCurve)->Arg(1)->Arg(2);

BENCHMARK_MAIN();
