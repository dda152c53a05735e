#include "aenx/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "aenx/math.hpp"

namespace aenx {

namespace {

constexpr double kIntegerTolerance = 1e-9;

void require_same_range(const BernoulliProfile& a, const BernoulliProfile& b, const char* what) {
  if (!(a.range() == b.range())) throw std::domain_error(std::string(what) + ": level ranges differ");
}

RateBreakdown assemble(const ShapedInput& input, const BernoulliProfile& noise, double capacity) {
  RateBreakdown out;
  out.duty = input.duty;
  out.capacity = capacity;
  const auto& r = noise.range();
  out.per_level.reserve(r.count());
  double sum = 0.0;
  for (int l = r.lo(); l <= r.hi(); ++l) {
    const double rate = bsc_rate(input.profile.at(l), noise.at(l));
    out.per_level.push_back({l, rate});
    sum += rate;
  }
  out.total = input.duty * sum;
  out.gap = capacity - out.total;
  return out;
}

}  // namespace

ChannelSpec::ChannelSpec(double e_x, double e_n) : e_x_(e_x), e_n_(e_n) {
  if (!(e_x > 0.0) || !(e_n > 0.0) || !std::isfinite(e_x) || !std::isfinite(e_n)) {
    throw std::domain_error("ChannelSpec: energies must be positive and finite");
  }
}

ChannelSpec ChannelSpec::from_snr(double snr) { return ChannelSpec(snr, 1.0); }

double ChannelSpec::gamma() const { return std::log2(1.0 + snr()); }

std::string_view to_string(InputChoice choice) { return choice == InputChoice::C1 ? "c1" : "c2"; }

InputChoice parse_input_choice(std::string_view text) {
  if (text == "c1" || text == "C1") return InputChoice::C1;
  if (text == "c2" || text == "C2") return InputChoice::C2;
  throw std::invalid_argument("unknown input choice '" + std::string(text) + "'");
}

LevelRange centered_window(double snr, int levels) {
  if (levels < 1) throw std::invalid_argument("centered_window: need at least one level");
  const int gamma = static_cast<int>(std::ceil(aen_capacity(snr) - 1e-12));
  const int spare = levels - gamma - 1;
  // floor(spare / 2), also for negative spare
  const int below = spare >= 0 ? spare / 2 : -((-spare + 1) / 2);
  return LevelRange(-below, -below + levels - 1);
}

ShapedInput input_profile(const ChannelSpec& channel, InputChoice choice, const LevelRange& range) {
  if (choice == InputChoice::C1) {
    const double total = channel.e_x() + channel.e_n();
    return {level_profile(ExponentialSpec::with_mean(total), range), channel.e_x() / total};
  }
  return {level_profile(ExponentialSpec::with_mean(channel.e_x()), range), 1.0};
}

BernoulliProfile noise_profile(const ChannelSpec& channel, const LevelRange& range) {
  return level_profile(ExponentialSpec::with_mean(channel.e_n()), range);
}

BernoulliProfile effective_noise_profile(const BernoulliProfile& p, const BernoulliProfile& q) {
  require_same_range(p, q, "effective_noise_profile");
  const auto& r = q.range();
  BernoulliProfile out(r);
  double prev = q.at(r.lo());
  out.set(r.lo(), prev);
  for (int l = r.lo() + 1; l <= r.hi(); ++l) {
    const double carry = p.at(l - 1) * prev;
    prev = bernoulli_convolve(q.at(l), carry);
    out.set(l, prev);
  }
  return out;
}

RateBreakdown rate_carryover_as_noise(const ShapedInput& input, const BernoulliProfile& q,
                                      double capacity) {
  require_same_range(input.profile, q, "rate_carryover_as_noise");
  return assemble(input, effective_noise_profile(input.profile, q), capacity);
}

RateBreakdown rate_carryover_decoded(const ShapedInput& input, const BernoulliProfile& q,
                                     double capacity) {
  require_same_range(input.profile, q, "rate_carryover_decoded");
  return assemble(input, q, capacity);
}

EntropyBounds entropy_bounds(int level) {
  EntropyBounds b;
  if (level >= 0) b.upper = 3.0 * kLog2E * std::ldexp(1.0, -level);
  if (level <= 0) b.lower = 1.0 - kLog2E * std::ldexp(1.0, level);
  return b;
}

double gap_constant(double epsilon) {
  if (!(epsilon > 0.0)) throw std::domain_error("gap_constant: epsilon must be positive");
  return std::log2(16.0 * kLog2E / epsilon);
}

GapCertificate gap_certificate(double epsilon, const ChannelSpec& channel, int levels_below) {
  GapCertificate cert;
  cert.epsilon = epsilon;
  cert.c_const = gap_constant(epsilon);
  cert.gamma_required = 2.0 * cert.c_const;
  cert.l_required = cert.c_const;

  const double gamma = channel.gamma();
  const double rounded = std::round(gamma);
  if (rounded < 1.0 || std::abs(gamma - rounded) > kIntegerTolerance * std::max(1.0, gamma)) {
    throw std::invalid_argument("gap_certificate: log2(1+SNR) = " + std::to_string(gamma) +
                                " is not a positive integer; the level shift needs integer gamma");
  }
  if (levels_below < 1) throw std::invalid_argument("gap_certificate: L must be at least 1");

  cert.gamma = static_cast<int>(rounded);
  cert.levels_below = levels_below;

  // Work on the unit-noise channel with SNR = 2^gamma - 1 exactly.
  const ChannelSpec unit(std::ldexp(1.0, cert.gamma) - 1.0, 1.0);
  const LevelRange range(-levels_below, levels_below + cert.gamma);
  const ShapedInput input = input_profile(unit, InputChoice::C1, range);
  const double capacity = static_cast<double>(cert.gamma);
  const RateBreakdown r2 = rate_carryover_decoded(input, noise_profile(unit, range), capacity);

  cert.achieved_rate = r2.total;
  cert.achieved_gap = r2.gap;
  cert.preconditions_met = cert.gamma >= cert.gamma_required && levels_below >= cert.l_required;
  cert.certified = cert.preconditions_met && cert.achieved_gap <= epsilon;
  return cert;
}

OptimalInput optimal_input_spec(const ChannelSpec& channel) {
  const double total = channel.e_x() + channel.e_n();
  return {channel.e_n() / total, total};
}

}  // namespace aenx
