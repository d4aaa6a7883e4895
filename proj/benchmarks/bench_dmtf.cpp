#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "listlab/dmtf/interpreter.hpp"
#include "listlab/dmtf/native.hpp"
#include "listlab/harness/stress.hpp"

using namespace listlab::dmtf;

namespace {

std::vector<ItemId> items(std::size_t ell) {
  std::vector<ItemId> v(ell);
  for (std::size_t k = 0; k < ell; ++k) v[k] = static_cast<ItemId>(k + 1);
  return v;
}

// Sequential searches through the step interpreter. A fresh interpreter
// every 4096 searches keeps the node arena bounded.
void BM_InterpreterSearch(benchmark::State& state) {
  const auto ell = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::unique_ptr<DmtfInterpreter> m;
  std::size_t done = 0;
  std::int64_t steps = 0;
  for (auto _ : state) {
    if (done % 4096 == 0) {
      state.PauseTiming();
      m = std::make_unique<DmtfInterpreter>(items(ell), MachineConfig{1, 1, {}});
      state.ResumeTiming();
    }
    m->invoke(0, static_cast<ItemId>(1 + rng() % ell));
    while (!m->idle(0)) {
      m->step(0);
      ++steps;
    }
    ++done;
  }
  state.counters["steps/search"] =
      benchmark::Counter(static_cast<double>(steps) / static_cast<double>(state.iterations()));
}
BENCHMARK(BM_InterpreterSearch)->Arg(8)->Arg(64)->Arg(256);

void BM_NativeSearch(benchmark::State& state) {
  const auto ell = static_cast<std::size_t>(state.range(0));
  constexpr std::size_t kCapacity = 1 << 16;
  std::mt19937_64 rng(4);
  std::unique_ptr<NativeDmtf> d;
  for (auto _ : state) {
    if (!d || d->memory().allocated() + 1 >= kCapacity) {
      state.PauseTiming();
      d = std::make_unique<NativeDmtf>(items(ell), MachineConfig{1, 1, {}}, kCapacity);
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(d->search(0, static_cast<ItemId>(1 + rng() % ell)).node);
  }
}
BENCHMARK(BM_NativeSearch)->Arg(8)->Arg(64)->Arg(256);

// p threads sharing one list; one iteration = 20000 searches in total.
void BM_NativeContended(benchmark::State& state) {
  listlab::harness::StressConfig cfg;
  cfg.processes = static_cast<std::size_t>(state.range(0));
  cfg.ell = 64;
  cfg.total_searches = 20000;
  for (auto _ : state) {
    const auto rep = listlab::harness::stress_native(cfg);
    if (!rep.passed()) state.SkipWithError("stress run failed its checks");
    ++cfg.seed;
  }
  state.SetItemsProcessed(state.iterations() * cfg.total_searches);
}
BENCHMARK(BM_NativeContended)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
