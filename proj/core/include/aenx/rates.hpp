#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "aenx/expansion.hpp"

namespace aenx {

/// AEN channel Y = X + N with mean input energy e_x and noise mean e_n.
class ChannelSpec {
 public:
  ChannelSpec(double e_x, double e_n);
  /// Unit-mean noise at the given linear SNR.
  static ChannelSpec from_snr(double snr);

  double e_x() const { return e_x_; }
  double e_n() const { return e_n_; }
  double snr() const { return e_x_ / e_n_; }
  /// log2(1 + SNR): the level offset between input and noise profiles.
  double gamma() const;

 private:
  double e_x_;
  double e_n_;
};

/// C1: expansion of Exp(mean E_X + E_N), duty-cycled to E_X / (E_X + E_N).
/// C2: expansion of Exp(mean E_X), always on.
enum class InputChoice { C1, C2 };

std::string_view to_string(InputChoice choice);
InputChoice parse_input_choice(std::string_view text);

struct ShapedInput {
  BernoulliProfile profile;
  double duty = 1.0;
};

struct LevelRate {
  int level;
  double rate;
};

struct RateBreakdown {
  std::vector<LevelRate> per_level;  // undiscounted per-level rates
  double total = 0.0;                // duty * sum of per-level rates
  double capacity = 0.0;
  double gap = 0.0;                  // capacity - total
  double duty = 1.0;
};

/// Tail bounds on H(q_l) for the unit-mean noise profile.
struct EntropyBounds {
  std::optional<double> lower;  // present for l <= 0
  std::optional<double> upper;  // present for l >= 0
};

struct GapCertificate {
  double epsilon = 0.0;
  double c_const = 0.0;
  double gamma_required = 0.0;
  double l_required = 0.0;
  int gamma = 0;
  int levels_below = 0;  // L
  double achieved_rate = 0.0;
  double achieved_gap = 0.0;
  bool preconditions_met = false;
  /// True only when the preconditions hold and achieved_gap <= epsilon.
  bool certified = false;
};

struct OptimalInput {
  double point_mass_at_zero;
  double exp_mean;
};

/// Window of `levels` consecutive levels placed around the signal band
/// [0, ceil(log2(1+snr))]: [-L, gamma + L] when the count allows it, any odd
/// remainder going to the top.
LevelRange centered_window(double snr, int levels);

ShapedInput input_profile(const ChannelSpec& channel, InputChoice choice, const LevelRange& range);

/// Noise profile q_l of the channel over the range.
BernoulliProfile noise_profile(const ChannelSpec& channel, const LevelRange& range);

/// q~ at the bottom level equals q; above it q~_l = q_l conv (p_{l-1} q~_{l-1}).
BernoulliProfile effective_noise_profile(const BernoulliProfile& p, const BernoulliProfile& q);

/// R1: carries folded into each level's crossover.
RateBreakdown rate_carryover_as_noise(const ShapedInput& input, const BernoulliProfile& q,
                                      double capacity);

/// R2: carries decoded from the least significant level upward.
RateBreakdown rate_carryover_decoded(const ShapedInput& input, const BernoulliProfile& q,
                                     double capacity);

EntropyBounds entropy_bounds(int level);

/// c = log2(16 log2(e) / epsilon).
double gap_constant(double epsilon);

/// Evaluates the high-SNR gap with the C1 input over [-L, L + gamma] with
/// unit noise. Throws std::invalid_argument unless gamma is a positive integer.
GapCertificate gap_certificate(double epsilon, const ChannelSpec& channel, int levels_below);

OptimalInput optimal_input_spec(const ChannelSpec& channel);

}  // namespace aenx
