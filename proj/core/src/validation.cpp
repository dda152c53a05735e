#include "aenx/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aenx/rng.hpp"

namespace aenx {

namespace {

// |freq - p| in binomial standard errors. A degenerate p must be hit exactly.
double binomial_z(double freq, double p, double n) {
  const double se = std::sqrt(p * (1.0 - p) / n);
  if (se == 0.0) return freq == p ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(freq - p) / se;
}

CheckResult at_most(std::string name, double statistic, double threshold) {
  return {std::move(name), statistic, threshold, statistic <= threshold};
}

}  // namespace

double ks_threshold(std::uint64_t n, double lambda, int lo) {
  return 1.95 / std::sqrt(static_cast<double>(n)) + lambda * std::ldexp(1.0, lo);
}

ValidationReport validate_expansion(const ValidationConfig& config) {
  if (config.samples < 2) throw std::invalid_argument("validate_expansion: need at least 2 samples");
  const ExponentialSpec spec(config.lambda);
  const LevelRange& range = config.range;
  const std::size_t levels = range.count();
  const BernoulliProfile reference = level_profile(spec, range);

  BernoulliProfile sampled = reference;
  if (config.perturb_level) {
    const int l = *config.perturb_level;
    sampled.set(l, std::clamp(sampled.at(l) + config.perturb_delta, 0.0, 1.0));
  }

  const double n = static_cast<double>(config.samples);
  Rng rng(config.seed, 0);
  std::vector<double> values;
  values.reserve(config.samples);
  std::vector<std::uint64_t> ones(levels, 0);
  std::vector<std::uint64_t> co(levels * levels, 0);
  std::vector<std::size_t> set_bits;
  set_bits.reserve(levels);
  const double t_quarter = 0.25 * config.lambda;
  const double t_half = 0.5 * config.lambda;
  double mgf_q = 0.0, mgf_q_sq = 0.0, mgf_h = 0.0, mgf_h_sq = 0.0;

  for (std::uint64_t s = 0; s < config.samples; ++s) {
    const BitWord w = sample_expansion(sampled, rng);
    set_bits.clear();
    for (std::size_t i = 0; i < levels; ++i) {
      if (w.bits[i]) set_bits.push_back(i);
    }
    for (std::size_t a = 0; a < set_bits.size(); ++a) {
      ++ones[set_bits[a]];
      for (std::size_t b = a + 1; b < set_bits.size(); ++b) ++co[set_bits[a] * levels + set_bits[b]];
    }
    const double v = dequantize(w);
    values.push_back(v);
    const double eq = std::exp(t_quarter * v);
    const double eh = std::exp(t_half * v);
    mgf_q += eq;
    mgf_q_sq += eq * eq;
    mgf_h += eh;
    mgf_h_sq += eh * eh;
  }

  ValidationReport report;

  report.checks.push_back(at_most("ks", ks_distance(values, spec),
                                  ks_threshold(config.samples, config.lambda, range.lo())));

  double worst_marginal = 0.0;
  report.level_frequency.resize(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    report.level_frequency[i] = static_cast<double>(ones[i]) / n;
    worst_marginal = std::max(worst_marginal, binomial_z(report.level_frequency[i], reference.probs()[i], n));
  }
  report.checks.push_back(at_most("marginal", worst_marginal, kMarginalSigmas));

  // Pairs involving a level that never (or always) fired have no sample
  // variance; their correlation is reported as zero.
  double worst_corr = 0.0;
  for (std::size_t a = 0; a < levels; ++a) {
    const double pa = report.level_frequency[a];
    const double va = pa * (1.0 - pa);
    for (std::size_t b = a + 1; b < levels; ++b) {
      const double pb = report.level_frequency[b];
      const double vb = pb * (1.0 - pb);
      if (va <= 0.0 || vb <= 0.0) continue;
      const double pab = static_cast<double>(co[a * levels + b]) / n;
      const double corr = (pab - pa * pb) / std::sqrt(va * vb);
      worst_corr = std::max(worst_corr, std::abs(corr) * std::sqrt(n));
    }
  }
  report.checks.push_back(at_most("independence", worst_corr, kCorrelationSigmas));

  auto mgf_check = [&](const char* name, double t, double sum, double sum_sq) {
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean) * n / (n - 1.0);
    const double se = std::sqrt(var / n);
    const double ref = mgf_reference(spec, t);
    const double z = se > 0.0 ? std::abs(mean - ref) / se : (mean == ref ? 0.0 : INFINITY);
    report.checks.push_back(at_most(name, z, kMgfSigmas));
  };
  mgf_check("mgf_t0.25", t_quarter, mgf_q, mgf_q_sq);
  mgf_check("mgf_t0.5", t_half, mgf_h, mgf_h_sq);

  // Opposite direction: continuous Exp draws, quantized, have q_l marginals.
  Rng qrng(config.seed, 1);
  std::vector<std::uint64_t> qones(levels, 0);
  for (std::uint64_t s = 0; s < config.samples; ++s) {
    const BitWord w = quantize(qrng.exponential(spec.mean()), range);
    for (std::size_t i = 0; i < levels; ++i) qones[i] += w.bits[i];
  }
  double worst_quantized = 0.0;
  report.quantized_frequency.resize(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    report.quantized_frequency[i] = static_cast<double>(qones[i]) / n;
    worst_quantized =
        std::max(worst_quantized, binomial_z(report.quantized_frequency[i], reference.probs()[i], n));
  }
  report.checks.push_back(at_most("marginal_quantized", worst_quantized, kMarginalSigmas));

  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const CheckResult& c) { return c.pass; });
  return report;
}

}  // namespace aenx
