#include "aenx/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace aenx {

LevelRange::LevelRange(int lo, int hi) : lo_(lo), hi_(hi) {
  if (lo > hi) {
    throw std::invalid_argument("LevelRange: lo (" + std::to_string(lo) + ") exceeds hi (" +
                                std::to_string(hi) + ")");
  }
}

std::size_t LevelRange::index(int level) const {
  if (!contains(level)) {
    throw std::out_of_range("level " + std::to_string(level) + " outside [" + std::to_string(lo_) +
                            ", " + std::to_string(hi_) + "]");
  }
  return static_cast<std::size_t>(level - lo_);
}

ExponentialSpec::ExponentialSpec(double lambda) : lambda_(lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("ExponentialSpec: lambda must be positive and finite");
  }
}

ExponentialSpec ExponentialSpec::with_mean(double mean) {
  if (!(mean > 0.0)) throw std::domain_error("ExponentialSpec: mean must be positive");
  return ExponentialSpec(1.0 / mean);
}

double ExponentialSpec::cdf(double x) const { return x <= 0.0 ? 0.0 : -std::expm1(-lambda_ * x); }

BernoulliProfile::BernoulliProfile(LevelRange range)
    : range_(range), probs_(range.count(), 0.0) {}

BernoulliProfile::BernoulliProfile(LevelRange range, std::vector<double> probs)
    : range_(range), probs_(std::move(probs)) {
  if (probs_.size() != range_.count()) {
    throw std::invalid_argument("BernoulliProfile: one probability per level required");
  }
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("BernoulliProfile: probability outside [0,1]");
  }
}

void BernoulliProfile::set(int level, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("BernoulliProfile: probability outside [0,1]");
  probs_[range_.index(level)] = p;
}

std::uint64_t BitWord::to_fixed() const {
  if (range.count() > 63) throw std::length_error("BitWord::to_fixed: more than 63 levels");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) v |= static_cast<std::uint64_t>(bits[i]) << i;
  return v;
}

BitWord BitWord::from_fixed(LevelRange range, std::uint64_t value) {
  if (range.count() > 63) throw std::length_error("BitWord::from_fixed: more than 63 levels");
  BitWord w(range);
  for (std::size_t i = 0; i < w.bits.size(); ++i) w.bits[i] = (value >> i) & 1U;
  w.overflow = (value >> range.count()) != 0;
  return w;
}

BernoulliProfile level_profile(const ExponentialSpec& spec, const LevelRange& range) {
  std::vector<double> probs;
  probs.reserve(range.count());
  for (int l = range.lo(); l <= range.hi(); ++l) {
    // ldexp keeps lambda * 2^l exact, so shifted profiles agree bit for bit.
    const double e = std::exp(std::ldexp(spec.lambda(), l));
    probs.push_back(std::isinf(e) ? 0.0 : 1.0 / (1.0 + e));
  }
  return BernoulliProfile(range, std::move(probs));
}

double profile_mean(const BernoulliProfile& profile) {
  double sum = 0.0;
  const auto& r = profile.range();
  for (int l = r.lo(); l <= r.hi(); ++l) sum += std::ldexp(profile.at(l), l);
  return sum;
}

BitWord quantize(double x, const LevelRange& range) {
  if (!(x >= 0.0)) throw std::domain_error("quantize: x must be non-negative");
  BitWord w(range);
  if (x >= std::ldexp(1.0, range.hi() + 1)) {
    std::fill(w.bits.begin(), w.bits.end(), std::uint8_t{1});
    w.overflow = true;
    return w;
  }
  // Subtracting 2^l from x in [2^l, 2^(l+1)) is exact, so the greedy
  // digit extraction introduces no rounding.
  for (int l = range.hi(); l >= range.lo(); --l) {
    const double weight = std::ldexp(1.0, l);
    if (x >= weight) {
      w.set(l, true);
      x -= weight;
    }
  }
  return w;
}

double dequantize(const BitWord& word) {
  double sum = 0.0;
  for (int l = word.range.lo(); l <= word.range.hi(); ++l) {
    if (word.at(l)) sum += std::ldexp(1.0, l);
  }
  return sum;
}

BitWord sample_expansion(const BernoulliProfile& profile, Rng& rng) {
  BitWord w(profile.range());
  const auto probs = profile.probs();
  for (std::size_t i = 0; i < probs.size(); ++i) w.bits[i] = rng.bernoulli(probs[i]) ? 1 : 0;
  return w;
}

double mgf_reference(const ExponentialSpec& spec, double t) {
  if (!(t < spec.lambda())) throw std::domain_error("mgf_reference: t must be below lambda");
  return spec.lambda() / (spec.lambda() - t);
}

double ks_distance(std::span<const double> samples, const ExponentialSpec& spec) {
  if (samples.empty()) throw std::domain_error("ks_distance: empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = spec.cdf(sorted[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace aenx
