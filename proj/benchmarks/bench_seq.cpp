#include <benchmark/benchmark.h>

#include <random>

#include "listlab/seq/distance.hpp"
#include "listlab/seq/mtf.hpp"

namespace {

std::vector<std::uint32_t> random_ids(std::size_t len, std::uint32_t ell, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> v(len);
  for (auto& x : v) x = 1 + static_cast<std::uint32_t>(rng() % ell);
  return v;
}

void BM_Distance(benchmark::State& state) {
  const auto ell = static_cast<std::uint32_t>(state.range(1));
  const auto seq = listlab::seq::make_sequence(random_ids(state.range(0), ell, 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(listlab::seq::total_distance(seq, ell));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Distance)->Args({1 << 10, 8})->Args({1 << 14, 64})->Args({1 << 16, 256});

void BM_Mtf(benchmark::State& state) {
  const auto ell = static_cast<std::uint32_t>(state.range(1));
  const auto seq = listlab::seq::make_sequence(random_ids(state.range(0), ell, 2));
  std::vector<std::uint32_t> init(ell);
  for (std::uint32_t k = 0; k < ell; ++k) init[k] = k + 1;
  const auto list = listlab::seq::make_list(init);
  for (auto _ : state) {
    benchmark::DoNotOptimize(listlab::seq::mtf_run(seq, list).cost);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Mtf)->Args({1 << 10, 8})->Args({1 << 14, 64})->Args({1 << 16, 256});

}  // namespace

BENCHMARK_MAIN();
