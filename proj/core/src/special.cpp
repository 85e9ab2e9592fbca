#include "drs/special.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drs/errors.hpp"

namespace drs {

namespace {

constexpr double kEps = 1e-14;
constexpr double kTiny = 1e-300;
constexpr int kMaxIters = 500;

// Modified Lentz evaluation of the continued fraction in the standard
// series/CF decomposition of I_x(a,b). Converges fast for
// x < (a+1)/(a+b+2); the caller handles the symmetric region.
double beta_cf(double x, double a, double b) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;

  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;

  for (int m = 1; m <= kMaxIters; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;

    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  return h;  // converged for all practical shapes well before the cap
}

}  // namespace

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("log_beta: shapes must be positive, got a=" +
                      std::to_string(a) + " b=" + std::to_string(b));
  }
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double reg_incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("reg_incomplete_beta: shapes must be positive, got a=" +
                      std::to_string(a) + " b=" + std::to_string(b));
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("reg_incomplete_beta: x must lie in [0,1], got x=" +
                      std::to_string(x));
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  if (x < (a + 1.0) / (a + b + 2.0)) {
    const double log_front =
        a * std::log(x) + b * std::log1p(-x) - std::log(a) - log_beta(a, b);
    return std::exp(log_front) * beta_cf(x, a, b);
  }
  const double log_front =
      b * std::log1p(-x) + a * std::log(x) - std::log(b) - log_beta(a, b);
  return 1.0 - std::exp(log_front) * beta_cf(1.0 - x, b, a);
}

double inverse_reg_incomplete_beta(double u, double a, double b, double lo,
                                   double hi) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError(
        "inverse_reg_incomplete_beta: shapes must be positive, got a=" +
        std::to_string(a) + " b=" + std::to_string(b));
  }
  if (!(u >= 0.0 && u <= 1.0)) {
    throw DomainError(
        "inverse_reg_incomplete_beta: u must lie in [0,1], got u=" +
        std::to_string(u));
  }
  if (u == 0.0) return lo;
  if (u == 1.0) return hi;

  const double lbeta = log_beta(a, b);
  double x = 0.5 * (lo + hi);
  {
    // a decent starting point: the distribution mean, if bracketed
    const double mean = a / (a + b);
    if (mean > lo && mean < hi) x = mean;
  }

  for (int it = 0; it < 200; ++it) {
    const double f = reg_incomplete_beta(x, a, b) - u;
    if (std::fabs(f) <= 1e-12) return x;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    double next = x;
    if (x > 0.0 && x < 1.0) {
      const double log_pdf =
          (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lbeta;
      const double pdf = std::exp(log_pdf);
      if (pdf > 0.0 && std::isfinite(pdf)) next = x - f / pdf;
    }
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);  // Newton left the bracket; bisect instead
    }
    if (next == x) {
      next = 0.5 * (lo + hi);
      if (next == x) return x;  // bracket cannot shrink further
    }
    x = next;
  }
  return x;
}

double inverse_reg_incomplete_beta(double u, double a, double b) {
  return inverse_reg_incomplete_beta(u, a, b, 0.0, 1.0);
}

}  // namespace drs
