#pragma once

#include <array>

#include "drs/cells.hpp"
#include "drs/rng.hpp"

namespace drs {

// Standard normal via Box-Muller. Consumes exactly two uniforms per call so
// stream positions stay reproducible (no cached spare).
double sample_normal(RngStream& rng);

// Gamma(shape, scale 1), Marsaglia-Tsang squeeze method.
double sample_gamma(double shape, RngStream& rng);

// Beta(a, b) as a gamma ratio, clamped to the open interval (0,1).
double sample_beta(double a, double b, RngStream& rng);

// Density proportional to x^(a-1) * (1 - rate*x)^(b-1) on [lo, hi],
// a scaled Beta with support upper bound 1/rate.
struct TruncatedScaledBeta {
  double a = 1.0;
  double b = 1.0;
  double rate = 1.0;
  double lo = 0.0;
  double hi = 1.0;
};

// Exact inverse-CDF draw: maps the truncation bounds through the Beta CDF,
// draws uniformly between the mapped endpoints, and inverts. Throws
// NumericalUnderflowError when the truncation region holds no mass.
double sample_truncated_scaled_beta(const TruncatedScaledBeta& d,
                                    RngStream& rng);

// Poisson: Knuth multiplication below mean 30, transformed rejection (PTRD)
// above.
long long sample_poisson(double mean, RngStream& rng);

// Number of failures before the r-th success with success probability mu,
// drawn as a gamma-mixed Poisson. mu = 1 returns 0; mu = 0 is an error.
long long sample_negative_binomial(long long r, double mu, RngStream& rng);

long long sample_binomial(long long n, double p, RngStream& rng);

// One multinomial draw over the four capture cells (p11, p10, p01, p00),
// via sequential conditional binomials.
std::array<long long, 4> sample_multinomial(long long n,
                                            const CellProbabilities& probs,
                                            RngStream& rng);

}  // namespace drs
