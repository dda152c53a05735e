#include "aenx/math.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aenx {

namespace {

// Slack for values that are mathematically <= 0.5 but carry rounding error
// from a preceding convolution.
constexpr double kHalfSlack = 1e-12;

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0,1], got " + std::to_string(p));
  }
}

}  // namespace

double binary_entropy(double p) {
  require_probability(p, "binary_entropy: p");
  if (p == 0.0 || p == 1.0) return 0.0;
  // log1p keeps the (1-p) term accurate when p is tiny.
  const double h = -p * std::log2(p) - (1.0 - p) * std::log1p(-p) / std::numbers::ln2;
  return h < 0.0 ? 0.0 : (h > 1.0 ? 1.0 : h);
}

double bernoulli_convolve(double a, double b) {
  require_probability(a, "bernoulli_convolve: a");
  require_probability(b, "bernoulli_convolve: b");
  return a * (1.0 - b) + b * (1.0 - a);
}

double bsc_rate(double p, double q) {
  require_probability(p, "bsc_rate: p");
  require_probability(q, "bsc_rate: q");
  if (p > 0.5 + kHalfSlack || q > 0.5 + kHalfSlack) {
    throw std::domain_error("bsc_rate: input and noise bit probabilities must not exceed 0.5");
  }
  const double r = binary_entropy(bernoulli_convolve(p, q)) - binary_entropy(q);
  return r > 0.0 ? r : 0.0;
}

double aen_capacity(double snr) {
  if (!(snr > 0.0)) throw std::domain_error("aen_capacity: snr must be positive");
  return std::log2(1.0 + snr);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace aenx
