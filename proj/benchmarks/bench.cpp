#include <benchmark/benchmark.h>

#include "morsecensus/dgraph.hpp"
#include "morsecensus/explore.hpp"
#include "morsecensus/fixtures.hpp"

using namespace mc;

namespace {

VirtualMorsification a2_seed() {
  VirtualMorsification vm;
  vm.mu = 2;
  vm.ptype = PrincipalType::X9Plus;
  vm.q = 1;
  vm.kinds = {{KindTag::Min, 0}, {KindTag::Saddle, 0}};
  vm.A = {-2, 1, 1, -2};
  vm.r = {2, -2};
  return vm;
}

void BM_Reflect(benchmark::State& state) {
  auto vm = fixture_state("x9plus-m7-a");
  for (auto _ : state) {
    reflect_inplace(vm, 0, 4);
    benchmark::DoNotOptimize(vm.A.data());
  }
}
BENCHMARK(BM_Reflect);

void BM_CanonicalKey(benchmark::State& state) {
  auto vm = fixture_state("x9plus-m7-a");
  for (auto _ : state) benchmark::DoNotOptimize(canonical_key(vm));
}
BENCHMARK(BM_CanonicalKey);

void BM_ExactDet(benchmark::State& state) {
  auto vm = fixture_state("x9plus-m7-a");
  for (auto _ : state) benchmark::DoNotOptimize(exact_det(vm));
}
BENCHMARK(BM_ExactDet);

void BM_EnumerateFlips(benchmark::State& state) {
  auto vm = fixture_state("x9plus-m7-a");
  FlipConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_flips(vm, cfg));
}
BENCHMARK(BM_EnumerateFlips);

void BM_CloseToyUniverse(benchmark::State& state) {
  FlipConfig cfg;
  for (auto _ : state) {
    Universe u = close_universe({a2_seed()}, cfg);
    benchmark::DoNotOptimize(u.states.size());
  }
}
BENCHMARK(BM_CloseToyUniverse);

void BM_CloseCapped(benchmark::State& state) {
  FlipConfig cfg;
  cfg.max_states = static_cast<uint64_t>(state.range(0));
  for (auto _ : state) {
    Universe u = close_universe({fixture_state("x9plus-m7-a")}, cfg);
    benchmark::DoNotOptimize(u.states.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CloseCapped)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_LinearExtensions(benchmark::State& state) {
  DGraph g;
  g.n = 9;
  for (int i = 0; i < 9; ++i) g.mark[i] = i % 2;
  // sparse order: every third adjacency, a mid-density poset
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j)
      if ((i + j) % 3 == 0) g.mult[i][j] = g.mult[j][i] = 1;
  for (auto _ : state) benchmark::DoNotOptimize(linear_extensions(g));
}
BENCHMARK(BM_LinearExtensions);

void BM_CanonicalDGraph(benchmark::State& state) {
  DGraph g;
  g.n = 9;
  for (int i = 0; i < 9; ++i) g.mark[i] = i < 5 ? 0 : 1;  // worst case: 5!*4! labelings
  for (int i = 0; i < 8; ++i) g.mult[i][i + 1] = g.mult[i + 1][i] = 1;
  for (auto _ : state) benchmark::DoNotOptimize(canonical_dgraph(g));
}
BENCHMARK(BM_CanonicalDGraph);

}  // namespace

BENCHMARK_MAIN();
