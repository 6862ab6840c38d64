#include <benchmark/benchmark.h>

#include "torusns/config.hpp"
#include "torusns/induction.hpp"
#include "torusns/initial_conditions.hpp"
#include "torusns/operators.hpp"

namespace {

using namespace torusns;

RunConfig config_for(int k_max) {
  RunConfig c;
  c.lattice = {k_max, TruncationRule::euclidean_ball};
  return c;
}

void BM_Bilinear(benchmark::State& state) {
  const RunConfig c = config_for(static_cast<int>(state.range(0)));
  const SpectralField v = generate_ic(c);
  for (auto _ : state) benchmark::DoNotOptimize(bilinear(v, v, static_cast<int>(state.range(1))));
  state.counters["sites"] = static_cast<double>(v.size());
  state.counters["triads"] = static_cast<double>(v.lattice().triad_count());
}
BENCHMARK(BM_Bilinear)->Args({2, 1})->Args({4, 1})->Args({6, 1})->Args({4, 4})->Unit(benchmark::kMicrosecond);

void BM_StarProduct(benchmark::State& state) {
  const RunConfig c = config_for(static_cast<int>(state.range(0)));
  const auto H0 = assemble_H0(DecompositionState::initial(generate_ic(c)), TimeGrid(c.params.substeps));
  for (auto _ : state) benchmark::DoNotOptimize(star_product(H0, H0));
}
BENCHMARK(BM_StarProduct)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_AdvanceUnitInterval(benchmark::State& state) {
  const RunConfig c = config_for(static_cast<int>(state.range(0)));
  auto s = DecompositionState::initial(generate_ic(c));
  // A few steps in, so the histories are populated.
  for (int i = 0; i < 3; ++i) s = advance_unit_interval(s, c.params).state;
  for (auto _ : state) benchmark::DoNotOptimize(advance_unit_interval(s, c.params));
}
BENCHMARK(BM_AdvanceUnitInterval)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
