#include <benchmark/benchmark.h>

#include "aenx/math.hpp"
#include "aenx/rates.hpp"

namespace {

void BM_RateDecoded(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  const aenx::ChannelSpec channel = aenx::ChannelSpec::from_snr(1000.0);
  const aenx::LevelRange range(-(levels - 11) / 2, -(levels - 11) / 2 + levels - 1);
  const auto input = aenx::input_profile(channel, aenx::InputChoice::C1, range);
  const auto q = aenx::noise_profile(channel, range);
  for (auto _ : state) {
    benchmark::DoNotOptimize(aenx::rate_carryover_decoded(input, q, 9.967).total);
  }
}
BENCHMARK(BM_RateDecoded)->Arg(21)->Arg(41);

void BM_RateAsNoise(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  const aenx::ChannelSpec channel = aenx::ChannelSpec::from_snr(1000.0);
  const aenx::LevelRange range(-(levels - 11) / 2, -(levels - 11) / 2 + levels - 1);
  const auto input = aenx::input_profile(channel, aenx::InputChoice::C1, range);
  const auto q = aenx::noise_profile(channel, range);
  for (auto _ : state) {
    benchmark::DoNotOptimize(aenx::rate_carryover_as_noise(input, q, 9.967).total);
  }
}
BENCHMARK(BM_RateAsNoise)->Arg(21)->Arg(41);

void BM_GapCertificate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(aenx::gap_certificate(0.25, aenx::ChannelSpec(16383.0, 1.0), 7).achieved_gap);
  }
}
BENCHMARK(BM_GapCertificate);

}  // namespace
