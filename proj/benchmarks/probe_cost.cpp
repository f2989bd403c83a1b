// Cost of evaluating one swap, segment versus hamming, across rotating scales.

#include <benchmark/benchmark.h>

#include <random>

#include "acbls/model.hpp"

namespace {

using namespace acbls;

std::vector<std::pair<int, int>> random_swaps(const Instance& inst, const std::vector<Symbol>& values, int count) {
  std::mt19937_64 rng(11);
  std::vector<std::pair<int, int>> out;
  while (static_cast<int>(out.size()) < count) {
    const int day = static_cast<int>(rng() % kDaysPerWeek);
    const int x = static_cast<int>(rng() % static_cast<unsigned>(inst.teams)) * kDaysPerWeek + day;
    const int y = static_cast<int>(rng() % static_cast<unsigned>(inst.teams)) * kDaysPerWeek + day;
    if (x != y && values[static_cast<std::size_t>(x)] != values[static_cast<std::size_t>(y)]) out.emplace_back(x, y);
  }
  return out;
}

void probe_swap(benchmark::State& state, ViolationMode mode) {
  const Instance inst = build_rotating_instance(static_cast<int>(state.range(0)));
  const Model model(inst, mode);
  const auto start = initial_random(inst, 3);
  ModelState st(model, start, 5);
  const auto swaps = random_swaps(inst, start, 256);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [x, y] = swaps[k++ % swaps.size()];
    benchmark::DoNotOptimize(st.probe_swap(x, y).delta);
  }
  state.counters["vars"] = model.num_vars();
}

void full_rebuild(benchmark::State& state, ViolationMode mode) {
  const Instance inst = build_rotating_instance(static_cast<int>(state.range(0)));
  const Model model(inst, mode);
  const auto start = initial_random(inst, 3);
  ModelState st(model, start, 5);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    st.reset(start, ++seed);
    benchmark::DoNotOptimize(st.total_violation());
  }
}

void unroll(benchmark::State& state) {
  const Instance inst = build_rotating_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const Model model(inst);
    benchmark::DoNotOptimize(model.constraints()[0].graph->count());
  }
}

}  // namespace

BENCHMARK_CAPTURE(probe_swap, segment, ViolationMode::segment)->DenseRange(1, 8);
BENCHMARK_CAPTURE(probe_swap, hamming, ViolationMode::hamming)->DenseRange(1, 8);
BENCHMARK_CAPTURE(full_rebuild, segment, ViolationMode::segment)->Arg(4)->Arg(8);
BENCHMARK_CAPTURE(full_rebuild, hamming, ViolationMode::hamming)->Arg(4)->Arg(8);
BENCHMARK(unroll)->Arg(1)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
