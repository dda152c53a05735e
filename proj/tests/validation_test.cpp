#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "aenx/expansion.hpp"
#include "aenx/validation.hpp"

namespace aenx {
namespace {

const CheckResult& find(const ValidationReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("missing check " + name);
}

TEST(Validation, PassesForClosedFormProfile) {
  ValidationConfig cfg;
  cfg.samples = 200'000;
  cfg.seed = 4;
  const ValidationReport r = validate_expansion(cfg);
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << " " << c.statistic << " > " << c.threshold;
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.checks.size(), 6u);
}

TEST(Validation, PerturbedProfileFailsMarginal) {
  ValidationConfig cfg;
  cfg.samples = 50'000;
  cfg.perturb_level = 0;
  cfg.perturb_delta = 0.1;
  const ValidationReport r = validate_expansion(cfg);
  EXPECT_FALSE(find(r, "marginal").pass);
  EXPECT_TRUE(find(r, "marginal_quantized").pass);
  EXPECT_FALSE(r.pass);
}

TEST(Validation, OtherRateParameter) {
  ValidationConfig cfg;
  cfg.lambda = 0.01;
  cfg.range = LevelRange(-12, 16);
  cfg.samples = 100'000;
  EXPECT_TRUE(validate_expansion(cfg).pass);
}

TEST(Validation, KsThreshold) {
  EXPECT_NEAR(ks_threshold(1'000'000, 1.0, -20), 0.00195 + std::ldexp(1.0, -20), 1e-15);
  EXPECT_LT(ks_threshold(1'000'000, 1.0, -20), 0.002);
}

// Quantized continuous draws: level bits are pairwise uncorrelated.
TEST(Validation, QuantizedNoiseBitsUncorrelated) {
  const LevelRange r(-6, 4);
  constexpr int kN = 200'000;
  Rng rng(77);
  std::vector<std::vector<std::uint8_t>> bits(r.count(), std::vector<std::uint8_t>(kN));
  for (int i = 0; i < kN; ++i) {
    const BitWord w = quantize(rng.exponential(1.0), r);
    for (std::size_t l = 0; l < r.count(); ++l) bits[l][i] = w.bits[l];
  }
  for (std::size_t a = 0; a < r.count(); ++a) {
    for (std::size_t b = a + 1; b < r.count(); ++b) {
      double sa = 0, sb = 0, sab = 0;
      for (int i = 0; i < kN; ++i) {
        sa += bits[a][i];
        sb += bits[b][i];
        sab += bits[a][i] * bits[b][i];
      }
      const double pa = sa / kN, pb = sb / kN;
      const double va = pa * (1 - pa), vb = pb * (1 - pb);
      if (va == 0 || vb == 0) continue;
      const double corr = (sab / kN - pa * pb) / std::sqrt(va * vb);
      EXPECT_LE(std::abs(corr), 4.0 / std::sqrt(kN)) << r.lo() + static_cast<int>(a) << "," << r.lo() + static_cast<int>(b);
    }
  }
}

}  // namespace
}  // namespace aenx
