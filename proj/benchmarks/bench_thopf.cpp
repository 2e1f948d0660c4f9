#include <benchmark/benchmark.h>

#include "param_sets.hpp"
#include "thopf/diagnostics.hpp"
#include "thopf/normal_form.hpp"
#include "thopf/pde_sim.hpp"
#include "thopf/spectrum.hpp"
#include "thopf/unfolding.hpp"

using namespace thopf;

namespace {

const TuringHopfPoint& th_group_1() {
  static const TuringHopfPoint th = locate_turing_hopf(testing::group_1());
  return th;
}

void BM_TuringHopfPoint(benchmark::State& state) {
  const ModelParams p = testing::group_1();
  for (auto _ : state) benchmark::DoNotOptimize(locate_turing_hopf(p));
}
BENCHMARK(BM_TuringHopfPoint)->Unit(benchmark::kMicrosecond);

void BM_NormalForm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compute_normal_form(th_group_1()));
}
BENCHMARK(BM_NormalForm)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const PlanarUnfolding pu = planar_reduce(compute_normal_form(th_group_1()));
  for (auto _ : state) benchmark::DoNotOptimize(classify(pu, -0.05, 0.0105));
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMicrosecond);

// One delay unit of simulated time per iteration; items are cell updates.
void BM_Simulate(benchmark::State& state) {
  const TuringHopfPoint& th = th_group_1();
  const ModelParams p = th.params.with_r_tau(th.r_star - 0.05, th.tau_star - 0.05);
  SimConfig cfg;
  cfg.nx = static_cast<int>(state.range(0));
  cfg.t_end = 10.0;
  InitialCondition init;
  long steps = 0;
  for (auto _ : state) {
    const SimResult res = simulate(p, init, cfg);
    steps = res.plan.steps;
    benchmark::DoNotOptimize(res.u.data());
  }
  state.SetItemsProcessed(state.iterations() * steps * cfg.nx);
}
BENCHMARK(BM_Simulate)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Diagnostics(benchmark::State& state) {
  const TuringHopfPoint& th = th_group_1();
  const ModelParams p = th.params.with_r_tau(th.r_star - 0.05, th.tau_star - 0.05);
  SimConfig cfg;
  cfg.nx = 200;
  cfg.t_end = 200.0;
  const SimResult res = simulate(p, InitialCondition{}, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(diagnostics(res));
}
BENCHMARK(BM_Diagnostics)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
