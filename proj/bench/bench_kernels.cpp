// Serial versus OpenMP timings of the sampling kernels.

#include <benchmark/benchmark.h>

#include "kads/ncalg.hpp"
#include "kads/rclass.hpp"
#include "kads/sklyanin.hpp"

using namespace kads;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_VerifyTable(benchmark::State& state) {
  PoissonConfig cfg;
  cfg.samples = 200;
  cfg.vartheta = 0.25;
  cfg.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(verify_table(TableKind::twisted_local, cfg).max_deviation);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.samples));
}

void BM_SampleViolating(benchmark::State& state) {
  const std::size_t n = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(sample_violating(n, kDefaultSeed, 1.0, 1.0, exec_of(state)).min_residual);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_LeafConservation(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(leaf_conservation(1.0, 64, 1.0, kDefaultSeed, exec_of(state)).max_drift);
}

void BM_AmbientNormalForm(benchmark::State& state) {
  const auto amb = ambient_algebra();
  NCPoly w = NCPoly::constant(Scalar(1));
  for (const char* g : {"s3", "s2", "s1", "s0", "s4"}) w = w * amb.gen(g);
  for (auto _ : state) benchmark::DoNotOptimize(normal_form(amb, w).terms().size());
}

}  // namespace

BENCHMARK(BM_VerifyTable)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleViolating)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LeafConservation)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AmbientNormalForm)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
