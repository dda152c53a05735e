#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "aenx/expansion.hpp"
#include "aenx/rates.hpp"

namespace aenx {

/// genie_strip removes carries using the true lower-level bits (decoding
/// order of R2); carry_as_noise leaves them in the observed bit (R1).
enum class SimMode { genie_strip, carry_as_noise };

/// How noise words are drawn: a real exponential variate quantized to the
/// window, or independent per-level Bernoulli bits with the q_l profile.
enum class NoiseSource { quantized_exponential, level_bernoulli };

std::string_view to_string(SimMode mode);
SimMode parse_sim_mode(std::string_view text);

struct SimConfig {
  std::uint64_t blocklength = 1000;
  std::uint64_t trials = 1;
  std::uint64_t seed = 1;
  SimMode mode = SimMode::genie_strip;
  LevelRange range{-20, 20};
  ChannelSpec channel{1.0, 1.0};
  InputChoice input_choice = InputChoice::C1;
  NoiseSource noise_source = NoiseSource::quantized_exponential;
  /// Replaces the C1/C2 input bits when set; the duty factor still follows
  /// input_choice.
  std::optional<BernoulliProfile> input_override;
  /// Worker threads; 0 picks the hardware concurrency. Output does not
  /// depend on this value.
  unsigned threads = 0;
};

/// 2x2 table of (input bit, observed bit) counts, indexed [x][y].
using JointCounts = std::array<std::array<std::uint64_t, 2>, 2>;

struct LevelStats {
  int level = 0;
  JointCounts joint{};
  std::uint64_t samples = 0;
  std::uint64_t carries = 0;     // carries into this level
  std::uint64_t noise_ones = 0;  // raw noise bit set
  double crossover = 0.0;        // Pr{observed != input}
  double mi = 0.0;               // plug-in I(X_l; observed_l), bits
  double carry_rate = 0.0;
  double noise_rate = 0.0;
};

struct SimReport {
  double duty = 1.0;
  std::uint64_t active_per_block = 0;
  std::uint64_t total_symbols = 0;
  std::uint64_t active_symbols = 0;
  /// Active symbols without overflow; per-level statistics use these only.
  std::uint64_t counted_symbols = 0;
  std::uint64_t overflow_count = 0;
  std::vector<LevelStats> per_level;
  /// Mean of dequantized X over every symbol, inactive ones included.
  double energy_estimate = 0.0;
  double energy_std_error = 0.0;
  /// duty * sum of per-level empirical MI.
  double mi_total = 0.0;
};

SimReport simulate(const SimConfig& config);

/// Plug-in mutual information of a 2x2 count table, in bits.
double empirical_mi(const JointCounts& counts);

/// Carry into each level of the exact sum x + n, lowest level first. The
/// bottom level never receives a carry.
std::vector<std::uint8_t> genie_strip_carries(const BitWord& x, const BitWord& n);

/// Exact binary sum over the shared window. The carry out of the top level
/// sets the overflow flag, as does an overflow flag on either operand.
BitWord add_words(const BitWord& x, const BitWord& n);

/// Number of leading symbols per block that carry coded input.
std::uint64_t active_symbols_per_block(double duty, std::uint64_t blocklength);

}  // namespace aenx
