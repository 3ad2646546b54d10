// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "assoclab/innovation.hpp"
#include "assoclab/kernels.hpp"
#include "assoclab/model.hpp"
#include "assoclab/simulate.hpp"

namespace {

std::vector<double> normal_sample(std::size_t n) {
  assoc::Engine rng{42};
  std::normal_distribution<double> z;
  std::vector<double> x(n);
  for (auto& v : x) v = z(rng);
  return x;
}

void BM_LagProductsSerial(benchmark::State& state) {
  const auto a = assoc::power_weights(1.5, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assoc::serial::lag_products(a, a.size() - 1));
}

void BM_LagProductsParallel(benchmark::State& state) {
  const auto a = assoc::power_weights(1.5, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assoc::parallel::lag_products(a, a.size() - 1));
}

void BM_TrigSumsSerial(benchmark::State& state) {
  const auto x = normal_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assoc::serial::trig_sums(x, 0.7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TrigSumsParallel(benchmark::State& state) {
  const auto x = normal_sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assoc::parallel::trig_sums(x, 0.7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

const assoc::MAModel& bench_model() {
  static const assoc::MAModel model(assoc::geometric_weights(0.5, 64),
                                    assoc::InnovationLaw::centered_exponential(1.0));
  return model;
}

void BM_CollectSerial(benchmark::State& state) {
  const assoc::WindowSampler window(bench_model(), 1024);
  const auto R = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        assoc::serial::collect(R, 7, [&](std::uint64_t, assoc::Engine& rng) { return window.draw(rng); }));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CollectParallel(benchmark::State& state) {
  const assoc::WindowSampler window(bench_model(), 1024);
  const auto R = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        assoc::parallel::collect(R, 7, [&](std::uint64_t, assoc::Engine& rng) { return window.draw(rng); }));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_LagProductsSerial)->Arg(1 << 10)->Arg(1 << 13);
BENCHMARK(BM_LagProductsParallel)->Arg(1 << 10)->Arg(1 << 13);
BENCHMARK(BM_TrigSumsSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_TrigSumsParallel)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_CollectSerial)->Arg(1 << 14);
BENCHMARK(BM_CollectParallel)->Arg(1 << 14);

BENCHMARK_MAIN();
