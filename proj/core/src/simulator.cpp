#include "aenx/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "aenx/math.hpp"
#include "aenx/rng.hpp"

namespace aenx {

namespace {

constexpr std::size_t kMaxSimLevels = 62;

struct Accumulator {
  std::vector<JointCounts> joint;
  std::vector<std::uint64_t> carries;
  std::vector<std::uint64_t> noise_ones;
  std::uint64_t counted = 0;
  std::uint64_t overflow = 0;

  explicit Accumulator(std::size_t levels)
      : joint(levels, JointCounts{}), carries(levels, 0), noise_ones(levels, 0) {}

  void merge(const Accumulator& other) {
    for (std::size_t i = 0; i < joint.size(); ++i) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) joint[i][a][b] += other.joint[i][a][b];
      }
      carries[i] += other.carries[i];
      noise_ones[i] += other.noise_ones[i];
    }
    counted += other.counted;
    overflow += other.overflow;
  }
};

struct EnergySums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

class TrialRunner {
 public:
  TrialRunner(const SimConfig& config, const ShapedInput& input, const BernoulliProfile& noise,
              std::uint64_t active)
      : config_(config),
        levels_(config.range.count()),
        input_probs_(config.input_override ? config.input_override->probs() : input.profile.probs()),
        noise_probs_(noise.probs()),
        active_(active),
        mask_((std::uint64_t{1} << levels_) - 1),
        scale_(std::ldexp(1.0, config.range.lo())),
        overflow_threshold_(std::ldexp(1.0, config.range.hi() + 1)) {}

  EnergySums run(std::uint64_t trial, Accumulator& acc) const {
    Rng rng(config_.seed, trial);
    EnergySums energy;
    for (std::uint64_t i = 0; i < active_; ++i) {
      std::uint64_t x = 0;
      for (std::size_t l = 0; l < levels_; ++l) {
        if (rng.bernoulli(input_probs_[l])) x |= std::uint64_t{1} << l;
      }
      const double x_value = static_cast<double>(x) * scale_;
      energy.sum += x_value;
      energy.sum_sq += x_value * x_value;

      bool overflow = false;
      const std::uint64_t n = draw_noise(rng, overflow);
      const std::uint64_t y_full = x + n;
      if (y_full > mask_) overflow = true;
      if (overflow) {
        ++acc.overflow;
        continue;
      }
      const std::uint64_t carry = y_full ^ x ^ n;
      const std::uint64_t observed = config_.mode == SimMode::genie_strip ? (y_full ^ carry) : y_full;
      ++acc.counted;
      for (std::size_t l = 0; l < levels_; ++l) {
        const auto xb = (x >> l) & 1U;
        const auto yb = (observed >> l) & 1U;
        ++acc.joint[l][xb][yb];
        acc.carries[l] += (carry >> l) & 1U;
        acc.noise_ones[l] += (n >> l) & 1U;
      }
    }
    // Inactive symbols transmit zero; they add nothing to the energy sums.
    return energy;
  }

 private:
  std::uint64_t draw_noise(Rng& rng, bool& overflow) const {
    if (config_.noise_source == NoiseSource::level_bernoulli) {
      std::uint64_t n = 0;
      for (std::size_t l = 0; l < levels_; ++l) {
        if (rng.bernoulli(noise_probs_[l])) n |= std::uint64_t{1} << l;
      }
      return n;
    }
    const double e = rng.exponential(config_.channel.e_n());
    if (e >= overflow_threshold_) {
      overflow = true;
      return mask_;
    }
    // Power-of-two scaling is exact, so floor reproduces quantize().
    return static_cast<std::uint64_t>(std::floor(std::ldexp(e, -config_.range.lo())));
  }

  const SimConfig& config_;
  std::size_t levels_;
  std::span<const double> input_probs_;
  std::span<const double> noise_probs_;
  std::uint64_t active_;
  std::uint64_t mask_;
  double scale_;
  double overflow_threshold_;
};

}  // namespace

std::string_view to_string(SimMode mode) {
  return mode == SimMode::genie_strip ? "genie_strip" : "carry_as_noise";
}

SimMode parse_sim_mode(std::string_view text) {
  if (text == "genie_strip" || text == "genie") return SimMode::genie_strip;
  if (text == "carry_as_noise") return SimMode::carry_as_noise;
  throw std::invalid_argument("unknown simulation mode '" + std::string(text) + "'");
}

std::uint64_t active_symbols_per_block(double duty, std::uint64_t blocklength) {
  if (!(duty > 0.0 && duty <= 1.0)) throw std::domain_error("duty must lie in (0,1]");
  const double raw = std::ceil(duty * static_cast<double>(blocklength) - 1e-9);
  return std::clamp<std::uint64_t>(static_cast<std::uint64_t>(raw), 1, blocklength);
}

double empirical_mi(const JointCounts& counts) {
  double total = 0.0;
  for (const auto& row : counts) {
    for (auto c : row) total += static_cast<double>(c);
  }
  if (total <= 0.0) throw std::domain_error("empirical_mi: empty count table");
  const double px[2] = {(counts[0][0] + counts[0][1]) / total, (counts[1][0] + counts[1][1]) / total};
  const double py[2] = {(counts[0][0] + counts[1][0]) / total, (counts[0][1] + counts[1][1]) / total};
  double mi = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (counts[a][b] == 0) continue;
      const double pxy = counts[a][b] / total;
      mi += pxy * std::log2(pxy / (px[a] * py[b]));
    }
  }
  return std::clamp(mi, 0.0, 1.0);
}

std::vector<std::uint8_t> genie_strip_carries(const BitWord& x, const BitWord& n) {
  if (!(x.range == n.range)) throw std::domain_error("genie_strip_carries: level ranges differ");
  std::vector<std::uint8_t> carries(x.bits.size(), 0);
  unsigned carry = 0;
  for (std::size_t i = 0; i < x.bits.size(); ++i) {
    carries[i] = static_cast<std::uint8_t>(carry);
    carry = (x.bits[i] + n.bits[i] + carry) >> 1;
  }
  return carries;
}

BitWord add_words(const BitWord& x, const BitWord& n) {
  if (!(x.range == n.range)) throw std::domain_error("add_words: level ranges differ");
  BitWord y(x.range);
  unsigned carry = 0;
  for (std::size_t i = 0; i < x.bits.size(); ++i) {
    const unsigned s = x.bits[i] + n.bits[i] + carry;
    y.bits[i] = static_cast<std::uint8_t>(s & 1U);
    carry = s >> 1;
  }
  y.overflow = carry != 0 || x.overflow || n.overflow;
  return y;
}

SimReport simulate(const SimConfig& config) {
  if (config.blocklength < 1 || config.trials < 1) {
    throw std::invalid_argument("simulate: blocklength and trials must be at least 1");
  }
  const std::size_t levels = config.range.count();
  if (levels > kMaxSimLevels) {
    throw std::invalid_argument("simulate: at most " + std::to_string(kMaxSimLevels) +
                                " levels are supported by the fixed-point channel");
  }
  if (config.input_override && !(config.input_override->range() == config.range)) {
    throw std::invalid_argument("simulate: input override range differs from the window");
  }

  const ShapedInput input = input_profile(config.channel, config.input_choice, config.range);
  const BernoulliProfile noise = noise_profile(config.channel, config.range);

  SimReport report;
  report.duty = input.duty;
  report.active_per_block = active_symbols_per_block(input.duty, config.blocklength);
  report.total_symbols = config.blocklength * config.trials;
  report.active_symbols = report.active_per_block * config.trials;

  const TrialRunner runner(config, input, noise, report.active_per_block);

  unsigned workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, config.trials));

  std::vector<EnergySums> energy(config.trials);
  std::vector<Accumulator> partial(workers, Accumulator(levels));
  std::atomic<std::uint64_t> next{0};
  auto work = [&](unsigned w) {
    for (std::uint64_t t = next++; t < config.trials; t = next++) energy[t] = runner.run(t, partial[w]);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  // Integer counts merge in any order; energy sums are reduced by trial index.
  Accumulator total(levels);
  for (const auto& p : partial) total.merge(p);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& e : energy) {
    sum += e.sum;
    sum_sq += e.sum_sq;
  }

  const double count = static_cast<double>(report.total_symbols);
  report.energy_estimate = sum / count;
  const double var = std::max(0.0, sum_sq / count - report.energy_estimate * report.energy_estimate);
  report.energy_std_error = count > 1 ? std::sqrt(var * count / (count - 1.0) / count) : 0.0;
  report.overflow_count = total.overflow;
  report.counted_symbols = total.counted;

  double mi_sum = 0.0;
  report.per_level.reserve(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    LevelStats s;
    s.level = config.range.lo() + static_cast<int>(i);
    s.joint = total.joint[i];
    s.samples = total.counted;
    s.carries = total.carries[i];
    s.noise_ones = total.noise_ones[i];
    if (s.samples > 0) {
      const double n = static_cast<double>(s.samples);
      s.crossover = static_cast<double>(s.joint[0][1] + s.joint[1][0]) / n;
      s.mi = empirical_mi(s.joint);
      s.carry_rate = static_cast<double>(s.carries) / n;
      s.noise_rate = static_cast<double>(s.noise_ones) / n;
    }
    mi_sum += s.mi;
    report.per_level.push_back(s);
  }
  report.mi_total = report.duty * mi_sum;
  return report;
}

}  // namespace aenx
