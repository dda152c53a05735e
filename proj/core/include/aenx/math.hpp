#pragma once

// Information-theoretic primitives. All logarithms are base 2.

namespace aenx {

/// log2(e), the constant behind the entropy tail bounds.
inline constexpr double kLog2E = 1.4426950408889634074;

/// H(p) in bits with 0 log 0 = 0. Throws std::domain_error outside [0,1].
double binary_entropy(double p);

/// a * (1 - b) + b * (1 - a): the crossover of two cascaded BSCs.
double bernoulli_convolve(double a, double b);

/// H(p conv q) - H(q). Both arguments must lie in [0, 0.5].
double bsc_rate(double p, double q);

/// log2(1 + snr) for snr > 0.
double aen_capacity(double snr);

double db_to_linear(double db);
double linear_to_db(double linear);

}  // namespace aenx
