#include <benchmark/benchmark.h>

#include "aenx/expansion.hpp"
#include "aenx/simulator.hpp"

namespace {

void BM_Simulate(benchmark::State& state) {
  aenx::SimConfig config;
  config.channel = aenx::ChannelSpec::from_snr(1000.0);
  config.range = aenx::LevelRange(-15, 25);
  config.blocklength = 10'000;
  config.trials = 4;
  config.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(aenx::simulate(config).mi_total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(config.blocklength * config.trials));
}
BENCHMARK(BM_Simulate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SampleExpansion(benchmark::State& state) {
  const auto profile = aenx::level_profile(aenx::ExponentialSpec(1.0), aenx::LevelRange(-20, 20));
  aenx::Rng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(aenx::dequantize(aenx::sample_expansion(profile, rng)));
  }
}
BENCHMARK(BM_SampleExpansion);

void BM_Quantize(benchmark::State& state) {
  const aenx::LevelRange range(-20, 20);
  aenx::Rng rng(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(aenx::quantize(rng.exponential(1.0), range).bits.data());
  }
}
BENCHMARK(BM_Quantize);

}  // namespace
