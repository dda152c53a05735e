#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aenx/expansion.hpp"

namespace aenx {

/// Statistical checks that independent Bernoulli levels with the closed-form
/// profile reproduce an exponential law.
struct ValidationConfig {
  double lambda = 1.0;
  LevelRange range{-20, 20};
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  /// Negative control: adds delta to the sampled probability at one level
  /// while the checks still compare against the unperturbed profile.
  std::optional<int> perturb_level;
  double perturb_delta = 0.0;
};

struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  std::vector<double> level_frequency;  // sampled marginal per level
  std::vector<double> quantized_frequency;  // marginal of quantized Exp draws
  bool pass = false;
};

/// KS threshold for n dyadic samples on a 2^lo grid: 1.95/sqrt(n) (about a
/// 0.1% false-rejection rate) plus the largest CDF shift from truncating
/// below level lo.
double ks_threshold(std::uint64_t n, double lambda, int lo);

inline constexpr double kMarginalSigmas = 4.0;
inline constexpr double kCorrelationSigmas = 4.0;
inline constexpr double kMgfSigmas = 3.0;

ValidationReport validate_expansion(const ValidationConfig& config);

}  // namespace aenx
