#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aenx/rng.hpp"

namespace aenx {

/// Closed window of expansion levels [lo, hi]; level l carries weight 2^l.
class LevelRange {
 public:
  LevelRange(int lo, int hi);

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  std::size_t count() const { return static_cast<std::size_t>(hi_ - lo_ + 1); }
  bool contains(int level) const { return level >= lo_ && level <= hi_; }
  std::size_t index(int level) const;

  friend bool operator==(const LevelRange&, const LevelRange&) = default;

 private:
  int lo_;
  int hi_;
};

/// Exponential law with rate lambda (mean 1/lambda).
class ExponentialSpec {
 public:
  explicit ExponentialSpec(double lambda);
  static ExponentialSpec with_mean(double mean);

  double lambda() const { return lambda_; }
  double mean() const { return 1.0 / lambda_; }
  double cdf(double x) const;

 private:
  double lambda_;
};

/// One Bernoulli parameter per level of a range.
class BernoulliProfile {
 public:
  /// All-zero profile.
  explicit BernoulliProfile(LevelRange range);
  BernoulliProfile(LevelRange range, std::vector<double> probs);

  const LevelRange& range() const { return range_; }
  double at(int level) const { return probs_[range_.index(level)]; }
  void set(int level, double p);
  std::span<const double> probs() const { return probs_; }

 private:
  LevelRange range_;
  std::vector<double> probs_;
};

/// Binary digits of a non-negative real restricted to a level window.
struct BitWord {
  explicit BitWord(LevelRange r) : range(r), bits(r.count(), 0) {}

  std::uint8_t at(int level) const { return bits[range.index(level)]; }
  void set(int level, bool bit) { bits[range.index(level)] = bit ? 1 : 0; }

  /// Integer value scaled by 2^-lo. Requires at most 63 levels.
  std::uint64_t to_fixed() const;
  static BitWord from_fixed(LevelRange range, std::uint64_t value);

  LevelRange range;
  std::vector<std::uint8_t> bits;  // indexed from range.lo() upward
  bool overflow = false;
};

/// p_l = 1 / (1 + exp(lambda 2^l)). Levels where the exponent overflows get 0.
BernoulliProfile level_profile(const ExponentialSpec& spec, const LevelRange& range);

/// Sum over the range of 2^l p_l.
double profile_mean(const BernoulliProfile& profile);

/// Floor-truncated binary digits of x. Inputs >= 2^(hi+1) saturate to all
/// ones and set the overflow flag.
BitWord quantize(double x, const LevelRange& range);

double dequantize(const BitWord& word);

/// Independent Bernoulli draw per level.
BitWord sample_expansion(const BernoulliProfile& profile, Rng& rng);

/// lambda / (lambda - t), the moment generating function of Exp(lambda).
double mgf_reference(const ExponentialSpec& spec, double t);

/// One-sample Kolmogorov-Smirnov statistic against Exp(lambda).
double ks_distance(std::span<const double> samples, const ExponentialSpec& spec);

}  // namespace aenx
