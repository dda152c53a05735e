#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "aenx/expansion.hpp"

namespace aenx {
namespace {

TEST(LevelRange, CountAndIndex) {
  const LevelRange r(-3, 4);
  EXPECT_EQ(r.count(), 8u);
  EXPECT_EQ(r.index(-3), 0u);
  EXPECT_EQ(r.index(4), 7u);
  EXPECT_THROW(r.index(5), std::out_of_range);
  EXPECT_THROW(LevelRange(2, 1), std::invalid_argument);
  EXPECT_EQ(LevelRange(0, 0).count(), 1u);
}

TEST(ExponentialSpec, RejectsNonPositiveRate) {
  EXPECT_THROW(ExponentialSpec(0.0), std::domain_error);
  EXPECT_THROW(ExponentialSpec(-1.0), std::domain_error);
  EXPECT_DOUBLE_EQ(ExponentialSpec::with_mean(4.0).lambda(), 0.25);
}

TEST(LevelProfile, HighPrecisionValues) {
  const auto prof = level_profile(ExponentialSpec(1.0), LevelRange(-3, 0));
  // mpmath: 1/(1+e) and 1/(1+e^(1/8)).
  EXPECT_NEAR(prof.at(0), 0.268941421369995121, 1e-15);
  EXPECT_NEAR(prof.at(-3), 0.468790626626243743, 1e-15);
}

TEST(LevelProfile, Limits) {
  const auto prof = level_profile(ExponentialSpec(1.0), LevelRange(-50, 1100));
  EXPECT_NEAR(prof.at(-50), 0.5, 1e-15);
  EXPECT_EQ(prof.at(1100), 0.0);  // exp overflow maps to an exact zero
  EXPECT_EQ(prof.at(20), 0.0);
}

TEST(LevelProfile, StrictlyDecreasingBelowHalf) {
  for (double lambda : {0.001, 0.5, 1.0, 3.0}) {
    const auto prof = level_profile(ExponentialSpec(lambda), LevelRange(-30, 8));
    for (int l = -30; l <= 8; ++l) {
      EXPECT_LT(prof.at(l), 0.5);
      if (l > -30) EXPECT_LT(prof.at(l), prof.at(l - 1)) << lambda << " " << l;
    }
  }
}

TEST(LevelProfile, ShiftIdentityIsExact) {
  for (int k : {1, 3, 10, 15}) {
    for (double lambda : {1.0, 0.37, 5.0}) {
      const auto base = level_profile(ExponentialSpec(lambda), LevelRange(-30, 30));
      const auto scaled = level_profile(ExponentialSpec(std::ldexp(lambda, k)), LevelRange(-30, 30));
      for (int l = -30; l + k <= 30; ++l) EXPECT_EQ(base.at(l + k), scaled.at(l));
    }
  }
}

TEST(ProfileMean, Examples) {
  EXPECT_EQ(profile_mean(BernoulliProfile(LevelRange(-4, 4))), 0.0);
  BernoulliProfile single(LevelRange(3, 3));
  single.set(3, 0.5);
  EXPECT_DOUBLE_EQ(profile_mean(single), 4.0);
  EXPECT_NEAR(profile_mean(level_profile(ExponentialSpec(1.0), LevelRange(-20, 20))), 1.0, 1e-4);
}

TEST(ProfileMean, TruncatedMeanNeverExceedsExact) {
  for (double mean : {0.5, 1.0, 10.0, 1000.0}) {
    for (int lo : {-20, -10, -3}) {
      for (int hi : {0, 5, 25}) {
        const auto p = level_profile(ExponentialSpec::with_mean(mean), LevelRange(lo, hi));
        EXPECT_LE(profile_mean(p), mean);
      }
    }
  }
}

TEST(Quantize, ExactDyadicValue) {
  const LevelRange r(-2, 3);
  const BitWord w = quantize(5.25, r);
  EXPECT_FALSE(w.overflow);
  for (int l = -2; l <= 3; ++l) {
    const bool expected = l == 2 || l == 0 || l == -2;
    EXPECT_EQ(w.at(l), expected ? 1 : 0) << l;
  }
  EXPECT_DOUBLE_EQ(dequantize(w), 5.25);
}

TEST(Quantize, ZeroAndOverflowBoundary) {
  const LevelRange r(-2, 3);
  const BitWord zero = quantize(0.0, r);
  for (auto b : zero.bits) EXPECT_EQ(b, 0);
  EXPECT_FALSE(zero.overflow);

  const BitWord top = quantize(16.0, r);
  EXPECT_TRUE(top.overflow);
  for (auto b : top.bits) EXPECT_EQ(b, 1);

  EXPECT_FALSE(quantize(std::nextafter(16.0, 0.0), r).overflow);
  EXPECT_THROW(quantize(-0.5, r), std::domain_error);
}

TEST(Quantize, RoundTripWithinOneUlpOfGrid) {
  const LevelRange r(-10, 5);
  const double pi = std::numbers::pi;
  const double back = dequantize(quantize(pi, r));
  EXPECT_LE(back, pi);
  EXPECT_LT(pi - back, std::ldexp(1.0, -10));

  Rng rng(3);
  for (int i = 0; i < 20000; ++i) {
    const double x = rng.uniform() * 64.0;
    const double y = dequantize(quantize(x, r));
    ASSERT_LE(y, x);
    ASSERT_LT(x - y, std::ldexp(1.0, -10));
  }
}

TEST(Dequantize, Examples) {
  EXPECT_EQ(dequantize(BitWord(LevelRange(-3, 3))), 0.0);
  BitWord w(LevelRange(-1, 0));
  w.set(0, true);
  w.set(-1, true);
  EXPECT_DOUBLE_EQ(dequantize(w), 1.5);
}

TEST(BitWord, FixedPointMatchesDequantize) {
  const LevelRange r(-20, 20);
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const BitWord w = quantize(rng.exponential(100.0), r);
    EXPECT_DOUBLE_EQ(static_cast<double>(w.to_fixed()) * std::ldexp(1.0, -20), dequantize(w));
    EXPECT_EQ(BitWord::from_fixed(r, w.to_fixed()).bits, w.bits);
  }
  EXPECT_THROW(BitWord(LevelRange(0, 63)).to_fixed(), std::length_error);
}

TEST(SampleExpansion, ZeroProfileGivesZeroWord) {
  const BernoulliProfile zero(LevelRange(-5, 5));
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    Rng rng(seed);
    const BitWord w = sample_expansion(zero, rng);
    for (auto b : w.bits) EXPECT_EQ(b, 0);
  }
}

TEST(SampleExpansion, DeterministicForFixedSeed) {
  const auto prof = level_profile(ExponentialSpec(1.0), LevelRange(-20, 20));
  Rng a(42), b(42), c(43);
  bool any_differs = false;
  for (int i = 0; i < 100; ++i) {
    const BitWord wa = sample_expansion(prof, a);
    EXPECT_EQ(wa.bits, sample_expansion(prof, b).bits);
    any_differs |= wa.bits != sample_expansion(prof, c).bits;
  }
  EXPECT_TRUE(any_differs);
}

TEST(SampleExpansion, MarginalsWithinBinomialBand) {
  const LevelRange r(-20, 20);
  const auto prof = level_profile(ExponentialSpec(1.0), r);
  constexpr int kN = 1'000'000;
  std::vector<int> ones(r.count(), 0);
  Rng rng(2024);
  for (int i = 0; i < kN; ++i) {
    const BitWord w = sample_expansion(prof, rng);
    for (std::size_t l = 0; l < w.bits.size(); ++l) ones[l] += w.bits[l];
  }
  for (int l = r.lo(); l <= r.hi(); ++l) {
    const double q = prof.at(l);
    const double freq = static_cast<double>(ones[r.index(l)]) / kN;
    EXPECT_LE(std::abs(freq - q), 4.0 * std::sqrt(q * (1.0 - q) / kN) + 1e-12) << "level " << l;
  }
}

TEST(MgfReference, Examples) {
  EXPECT_DOUBLE_EQ(mgf_reference(ExponentialSpec(1.0), 0.0), 1.0);
  EXPECT_DOUBLE_EQ(mgf_reference(ExponentialSpec(1.0), 0.5), 2.0);
  EXPECT_DOUBLE_EQ(mgf_reference(ExponentialSpec(2.0), 1.0), 2.0);
  EXPECT_THROW(mgf_reference(ExponentialSpec(1.0), 1.0), std::domain_error);
  EXPECT_THROW(mgf_reference(ExponentialSpec(1.0), 2.0), std::domain_error);
}

TEST(KsDistance, DirectCdfComputations) {
  const ExponentialSpec spec(1.0);
  const std::vector<double> atom(100, 1.0);
  // Empirical CDF jumps 0 -> 1 at x = 1, so D = max(F(1), 1 - F(1)).
  EXPECT_NEAR(ks_distance(atom, spec), 1.0 - std::exp(-1.0), 1e-15);
  const std::vector<double> origin{0.0};
  EXPECT_DOUBLE_EQ(ks_distance(origin, spec), 1.0);
  EXPECT_THROW(ks_distance(std::vector<double>{}, spec), std::domain_error);
}

TEST(KsDistance, ExactExponentialSamplesPassThreshold) {
  Rng rng(17);
  std::vector<double> xs(1'000'000);
  for (auto& x : xs) x = rng.exponential(1.0);
  EXPECT_LT(ks_distance(xs, ExponentialSpec(1.0)), 0.002);
}

TEST(KsDistance, ExpansionSamplesReproduceExponentialLaw) {
  const LevelRange r(-20, 20);
  const auto prof = level_profile(ExponentialSpec(2.0), r);
  Rng rng(8);
  std::vector<double> xs(200'000);
  for (auto& x : xs) x = dequantize(sample_expansion(prof, rng));
  EXPECT_LT(ks_distance(xs, ExponentialSpec(2.0)), 1.63 / std::sqrt(200'000.0) + 2.0 * std::ldexp(1.0, -20));
  EXPECT_GT(ks_distance(xs, ExponentialSpec(1.5)), 0.05);
}

TEST(EmpiricalMgf, WithinThreeStandardErrors) {
  const LevelRange r(-20, 20);
  const double lambda = 1.0;
  const auto prof = level_profile(ExponentialSpec(lambda), r);
  constexpr int kN = 400'000;
  Rng rng(31);
  double s = 0.0, s2 = 0.0;
  const double t = 0.25 * lambda;
  for (int i = 0; i < kN; ++i) {
    const double e = std::exp(t * dequantize(sample_expansion(prof, rng)));
    s += e;
    s2 += e * e;
  }
  const double mean = s / kN;
  const double se = std::sqrt((s2 / kN - mean * mean) / (kN - 1));
  EXPECT_LE(std::abs(mean - mgf_reference(ExponentialSpec(lambda), t)), 3.0 * se);
}

}  // namespace
}  // namespace aenx
