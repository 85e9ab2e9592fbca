#include "drs/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "drs/errors.hpp"
#include "drs/special.hpp"

namespace drs {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

double sample_normal(RngStream& rng) {
  const double u1 = rng.uniform_pos();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double sample_gamma(double shape, RngStream& rng) {
  if (!(shape > 0.0)) {
    throw DomainError("sample_gamma: shape must be positive, got " +
                      std::to_string(shape));
  }
  if (shape < 1.0) {
    // boost a shape+1 draw back down
    const double g = sample_gamma(shape + 1.0, rng);
    const double u = rng.uniform_pos();
    return g * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = sample_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_pos();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_beta(double a, double b, RngStream& rng) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("sample_beta: shapes must be positive, got a=" +
                      std::to_string(a) + " b=" + std::to_string(b));
  }
  const double g1 = sample_gamma(a, rng);
  const double g2 = sample_gamma(b, rng);
  const double sum = g1 + g2;
  double x = sum > 0.0 ? g1 / sum : 0.5;
  if (!(x > 0.0)) x = std::numeric_limits<double>::min();
  if (!(x < 1.0)) x = std::nextafter(1.0, 0.0);
  return x;
}

double sample_truncated_scaled_beta(const TruncatedScaledBeta& d,
                                    RngStream& rng) {
  if (!(d.a > 0.0) || !(d.b > 0.0) || !(d.rate > 0.0)) {
    throw DomainError("truncated scaled beta: a, b, rate must be positive");
  }
  if (!(d.lo >= 0.0) || !(d.hi > d.lo)) {
    throw DomainError("truncated scaled beta: need 0 <= lo < hi, got lo=" +
                      std::to_string(d.lo) + " hi=" + std::to_string(d.hi));
  }
  const double y_lo = d.rate * d.lo;
  double y_hi = d.rate * d.hi;
  if (y_hi > 1.0 + 1e-9) {
    throw DomainError(
        "truncated scaled beta: hi exceeds the support bound 1/rate (hi=" +
        std::to_string(d.hi) + ", 1/rate=" + std::to_string(1.0 / d.rate) +
        ")");
  }
  y_hi = std::min(y_hi, 1.0);
  if (!(y_lo < y_hi)) {
    throw NumericalUnderflowError(
        "truncated scaled beta: empty interval after scaling, [" +
        std::to_string(d.lo) + ", " + std::to_string(d.hi) + "] at rate " +
        std::to_string(d.rate));
  }
  const double f_lo = reg_incomplete_beta(y_lo, d.a, d.b);
  const double f_hi = reg_incomplete_beta(y_hi, d.a, d.b);
  const double mass = f_hi - f_lo;
  if (!(mass > 1e-300)) {
    throw NumericalUnderflowError(
        "truncated scaled beta: no probability mass on [" +
        std::to_string(d.lo) + ", " + std::to_string(d.hi) + "] (rate " +
        std::to_string(d.rate) + ", shapes " + std::to_string(d.a) + ", " +
        std::to_string(d.b) + ")");
  }
  const double u = f_lo + mass * rng.uniform();
  const double y = inverse_reg_incomplete_beta(u, d.a, d.b, y_lo, y_hi);
  return std::clamp(y / d.rate, d.lo, d.hi);
}

namespace {

long long poisson_knuth(double mean, RngStream& rng) {
  const double limit = std::exp(-mean);
  long long k = 0;
  double prod = rng.uniform_pos();
  while (prod > limit) {
    prod *= rng.uniform_pos();
    ++k;
  }
  return k;
}

// Hoermann's transformed rejection with squeeze, valid for mean >= 10.
long long poisson_ptrd(double mean, RngStream& rng) {
  const double log_mean = std::log(mean);
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long long>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        k * log_mean - mean - std::lgamma(k + 1.0)) {
      return static_cast<long long>(k);
    }
  }
}

}  // namespace

long long sample_poisson(double mean, RngStream& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw DomainError("sample_poisson: mean must be finite and >= 0, got " +
                      std::to_string(mean));
  }
  if (mean == 0.0) return 0;
  if (mean < 30.0) return poisson_knuth(mean, rng);
  return poisson_ptrd(mean, rng);
}

long long sample_negative_binomial(long long r, double mu, RngStream& rng) {
  if (r < 1) {
    throw DomainError("sample_negative_binomial: r must be >= 1, got " +
                      std::to_string(r));
  }
  if (mu == 0.0) {
    throw DomainError(
        "sample_negative_binomial: success probability 0 diverges");
  }
  if (!(mu > 0.0 && mu <= 1.0)) {
    throw DomainError(
        "sample_negative_binomial: success probability must be in (0,1], "
        "got " +
        std::to_string(mu));
  }
  if (mu == 1.0) return 0;
  const double scale = (1.0 - mu) / mu;
  const double lambda = sample_gamma(static_cast<double>(r), rng) * scale;
  return sample_poisson(lambda, rng);
}

long long sample_binomial(long long n, double p, RngStream& rng) {
  if (n < 0) {
    throw DomainError("sample_binomial: n must be >= 0, got " +
                      std::to_string(n));
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("sample_binomial: p must be in [0,1], got " +
                      std::to_string(p));
  }
  long long count = 0;
  for (long long i = 0; i < n; ++i) {
    if (rng.uniform() < p) ++count;
  }
  return count;
}

std::array<long long, 4> sample_multinomial(long long n,
                                            const CellProbabilities& probs,
                                            RngStream& rng) {
  if (n < 0) {
    throw DomainError("sample_multinomial: n must be >= 0, got " +
                      std::to_string(n));
  }
  const std::array<double, 4> p{probs.p11, probs.p10, probs.p01, probs.p00};
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DomainError("sample_multinomial: cell probability " +
                        std::to_string(v) + " outside [0,1]");
    }
    total += v;
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw DomainError("sample_multinomial: cell probabilities sum to " +
                      std::to_string(total) + ", not 1");
  }
  std::array<long long, 4> counts{0, 0, 0, 0};
  long long remaining = n;
  double rest = 1.0;
  for (int i = 0; i < 3; ++i) {
    if (remaining == 0) break;
    const double cond =
        rest > 0.0 ? std::clamp(p[i] / rest, 0.0, 1.0) : 1.0;
    counts[i] = sample_binomial(remaining, cond, rng);
    remaining -= counts[i];
    rest -= p[i];
  }
  counts[3] = remaining;
  return counts;
}

}  // namespace drs
