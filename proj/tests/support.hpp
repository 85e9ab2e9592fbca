#pragma once

// Shared statistical machinery for the test suites: chi-square machinery
// for goodness-of-fit checks, total-variation helpers, and synthetic chain
// builders. Kept independent of the library under test except where a
// function is itself pinned by frozen oracle values first.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <vector>

namespace support {

// Regularized lower incomplete gamma P(a, x): series below a+1, continued
// fraction above.
inline double reg_lower_gamma(double a, double x) {
  if (x <= 0.0) return 0.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  // Lentz continued fraction for Q(a, x)
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  const double q = std::exp(-x + a * std::log(x) - lg) * h;
  return 1.0 - q;
}

inline double chi_sq_cdf(double x, double dof) {
  return reg_lower_gamma(0.5 * dof, 0.5 * x);
}

// Upper quantile by bisection; good enough for test thresholds.
inline double chi_sq_quantile(double prob, double dof) {
  double lo = 0.0;
  double hi = dof + 200.0 * std::sqrt(2.0 * dof) + 200.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (chi_sq_cdf(mid, dof) < prob) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Pearson statistic for observed counts vs expected counts (already binned).
inline double chi_sq_statistic(const std::vector<double>& observed,
                               const std::vector<double>& expected) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = observed[i] - expected[i];
    stat += d * d / expected[i];
  }
  return stat;
}

// Chi-square GOF at significance alpha. bin_probs must sum to ~1; bins with
// tiny expected counts should be merged by the caller beforehand.
inline bool chi_sq_gof_passes(const std::vector<double>& observed,
                              const std::vector<double>& bin_probs,
                              double n_draws, double alpha) {
  std::vector<double> expected;
  expected.reserve(bin_probs.size());
  for (double p : bin_probs) expected.push_back(p * n_draws);
  const double stat = chi_sq_statistic(observed, expected);
  const double crit =
      chi_sq_quantile(1.0 - alpha, static_cast<double>(observed.size() - 1));
  return stat < crit;
}

// Total variation between an empirical integer histogram and an exact pmf
// given on [lo, hi]; empirical mass outside the range counts fully.
inline double tv_discrete(const std::map<long long, long long>& hist,
                          long long total, long long lo, long long hi,
                          const std::function<double(long long)>& pmf) {
  double tv = 0.0;
  std::map<long long, long long> inside;
  double outside = 0.0;
  for (const auto& [value, count] : hist) {
    if (value < lo || value > hi) {
      outside += static_cast<double>(count) / total;
    } else {
      inside[value] = count;
    }
  }
  for (long long v = lo; v <= hi; ++v) {
    const auto it = inside.find(v);
    const double emp =
        it == inside.end() ? 0.0 : static_cast<double>(it->second) / total;
    tv += std::fabs(emp - pmf(v));
  }
  return 0.5 * tv + 0.5 * outside;
}

// Total variation between binned draws and exact bin masses from a CDF.
// Edges define bins [e0,e1), [e1,e2), ... [e_{B-1}, e_B].
inline double tv_binned(const std::vector<double>& draws,
                        const std::vector<double>& edges,
                        const std::function<double(double)>& cdf) {
  const std::size_t bins = edges.size() - 1;
  std::vector<double> counts(bins, 0.0);
  for (double x : draws) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    std::size_t idx =
        static_cast<std::size_t>(std::distance(edges.begin(), it));
    if (idx == 0) idx = 1;
    if (idx > bins) idx = bins;
    counts[idx - 1] += 1.0;
  }
  double tv = 0.0;
  const double n = static_cast<double>(draws.size());
  for (std::size_t i = 0; i < bins; ++i) {
    const double mass = cdf(edges[i + 1]) - cdf(edges[i]);
    tv += std::fabs(counts[i] / n - mass);
  }
  return 0.5 * tv;
}

// Chi-square GOF for a discrete generator: individual values on [lo, hi]
// plus the two tail lumps, greedily merged so every cell expects >= 10.
inline bool chi_sq_gof_discrete(const std::map<long long, long long>& hist,
                                long long total, long long lo, long long hi,
                                const std::function<double(long long)>& pmf,
                                double alpha) {
  std::vector<double> probs;
  std::vector<double> counts;
  double body = 0.0;
  for (long long v = lo; v <= hi; ++v) {
    const double p = pmf(v);
    body += p;
    const auto it = hist.find(v);
    probs.push_back(p);
    counts.push_back(it == hist.end() ? 0.0 : static_cast<double>(it->second));
  }
  double left_tail = 0.0;
  double right_tail = 0.0;
  double left_count = 0.0;
  double right_count = 0.0;
  for (const auto& [value, count] : hist) {
    if (value < lo) left_count += static_cast<double>(count);
    if (value > hi) right_count += static_cast<double>(count);
  }
  // split the off-grid mass between the tails (lo = 0 puts it all right)
  right_tail = 1.0 - body;
  if (lo > 0) {
    left_tail = right_tail / 2.0;
    right_tail -= left_tail;
  }
  probs.insert(probs.begin(), left_tail);
  counts.insert(counts.begin(), left_count);
  probs.push_back(right_tail);
  counts.push_back(right_count);

  std::vector<double> merged_p;
  std::vector<double> merged_c;
  double accum_p = 0.0;
  double accum_c = 0.0;
  const double n = static_cast<double>(total);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    accum_p += probs[i];
    accum_c += counts[i];
    if (accum_p * n >= 10.0) {
      merged_p.push_back(accum_p);
      merged_c.push_back(accum_c);
      accum_p = 0.0;
      accum_c = 0.0;
    }
  }
  if (accum_p > 0.0 || accum_c > 0.0) {
    if (merged_p.empty()) return false;
    merged_p.back() += accum_p;
    merged_c.back() += accum_c;
  }
  if (merged_p.size() < 3) return false;
  return chi_sq_gof_passes(merged_c, merged_p, n, alpha);
}

// Chi-square GOF for continuous draws against a CDF over given bin edges;
// mass outside the edges joins the end bins, small bins merge.
inline bool chi_sq_gof_edges(const std::vector<double>& draws,
                             const std::vector<double>& edges,
                             const std::function<double(double)>& cdf,
                             double alpha) {
  const std::size_t bins = edges.size() - 1;
  std::vector<double> counts(bins, 0.0);
  for (double x : draws) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    std::size_t idx =
        static_cast<std::size_t>(std::distance(edges.begin(), it));
    if (idx == 0) idx = 1;
    if (idx > bins) idx = bins;
    counts[idx - 1] += 1.0;
  }
  std::vector<double> probs(bins, 0.0);
  for (std::size_t i = 0; i < bins; ++i) {
    probs[i] = cdf(edges[i + 1]) - cdf(edges[i]);
  }
  probs.front() += cdf(edges.front());
  probs.back() += 1.0 - cdf(edges.back());

  const double n = static_cast<double>(draws.size());
  std::vector<double> merged_p;
  std::vector<double> merged_c;
  double accum_p = 0.0;
  double accum_c = 0.0;
  for (std::size_t i = 0; i < bins; ++i) {
    accum_p += probs[i];
    accum_c += counts[i];
    if (accum_p * n >= 10.0) {
      merged_p.push_back(accum_p);
      merged_c.push_back(accum_c);
      accum_p = 0.0;
      accum_c = 0.0;
    }
  }
  if (accum_p > 0.0 || accum_c > 0.0) {
    if (merged_p.empty()) return false;
    merged_p.back() += accum_p;
    merged_c.back() += accum_c;
  }
  if (merged_p.size() < 3) return false;
  return chi_sq_gof_passes(merged_c, merged_p, n, alpha);
}

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Total variation between a discrete empirical histogram and a pmf, with
// the support grouped into width-w bins to tame per-cell noise; empirical
// mass outside [lo, hi] counts fully.
inline double tv_discrete_binned(const std::map<long long, long long>& hist,
                                 long long total, long long lo, long long hi,
                                 long long width,
                                 const std::function<double(long long)>& pmf) {
  double tv = 0.0;
  double outside = 0.0;
  for (const auto& [value, count] : hist) {
    if (value < lo || value > hi)
      outside += static_cast<double>(count) / total;
  }
  for (long long start = lo; start <= hi; start += width) {
    const long long end = std::min(hi, start + width - 1);
    double mass = 0.0;
    double emp = 0.0;
    for (long long v = start; v <= end; ++v) {
      mass += pmf(v);
      const auto it = hist.find(v);
      if (it != hist.end()) emp += static_cast<double>(it->second) / total;
    }
    tv += std::fabs(emp - mass);
  }
  return 0.5 * tv + 0.5 * outside;
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

inline double variance_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) {
    const double d = x - m;
    ss += d * d;
  }
  return ss / (v.size() - 1);
}

// log(sum(exp(v))) without overflow
inline double log_sum_exp(const std::vector<double>& v) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : v) mx = std::max(mx, x);
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double x : v) s += std::exp(x - mx);
  return mx + std::log(s);
}

// Deterministic little generator for synthetic chains, independent of the
// library's stream machinery.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed ? seed : 0x853c49e6748fea9bULL) {}

  double uniform() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return static_cast<double>(state_ >> 11) * 0x1.0p-53;
  }

  double normal() {
    const double u1 = std::max(uniform(), 1e-300);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586 * u2);
  }

 private:
  std::uint64_t state_;
};

inline std::vector<double> synthetic_chain(std::size_t len, double mean,
                                           double sd, std::uint64_t seed) {
  TestRng rng(seed);
  std::vector<double> out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) out.push_back(mean + sd * rng.normal());
  return out;
}

}  // namespace support
