#include "drs/posterior.hpp"

#include <algorithm>
#include <cmath>

#include "drs/errors.hpp"

namespace drs {

namespace {

void check_level(double level) {
  if (!(level >= 0.0 && level <= 1.0)) {
    throw ConfigError("interval level must lie in [0,1], got " +
                      std::to_string(level));
  }
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

double sample_sd(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) {
    const double d = x - mean;
    ss += d * d;
  }
  return std::sqrt(ss / (v.size() - 1));
}

}  // namespace

double quantile_sorted(const std::vector<double>& sorted, double prob) {
  if (sorted.empty()) {
    throw DegenerateDataError("quantile of an empty sample");
  }
  const long long n = static_cast<long long>(sorted.size());
  long long rank = static_cast<long long>(
      std::ceil(prob * static_cast<double>(n)));
  rank = std::clamp(rank, 1LL, n);
  return sorted[rank - 1];
}

PosteriorSummary summarize(const std::vector<long long>& draws, double level) {
  check_level(level);
  if (draws.size() < 2) {
    throw DegenerateDataError(
        "posterior summary needs at least 2 draws, got " +
        std::to_string(draws.size()));
  }
  PosteriorSummary s;
  s.level = level;
  s.n_draws = static_cast<long long>(draws.size());

  std::vector<double> sorted;
  sorted.reserve(draws.size());
  double inv_sum = 0.0;
  double inv2_sum = 0.0;
  for (long long v : draws) {
    if (v <= 0) {
      throw DomainError("posterior draws must be positive, got " +
                        std::to_string(v));
    }
    sorted.push_back(static_cast<double>(v));
    const double inv = 1.0 / static_cast<double>(v);
    inv_sum += inv;
    inv2_sum += inv * inv;
    ++s.histogram[v];
  }
  std::sort(sorted.begin(), sorted.end());

  s.mean = mean_of(sorted);
  s.sd = sample_sd(sorted, s.mean);
  s.median = quantile_sorted(sorted, 0.5);
  s.sre = inv_sum / inv2_sum;
  s.ci = {quantile_sorted(sorted, (1.0 - level) / 2.0),
          quantile_sorted(sorted, (1.0 + level) / 2.0)};

  long long best_count = 0;
  for (const auto& [value, count] : s.histogram) {
    if (count > best_count) {
      best_count = count;
      s.map = static_cast<double>(value);
    }
  }
  return s;
}

PosteriorSummary pooled_summary(const std::vector<ChainTrace>& traces,
                                double level) {
  if (traces.empty()) {
    throw DegenerateDataError("no chains to pool");
  }
  const long long burn_in = traces[0].burn_in;
  for (const auto& t : traces) {
    if (t.burn_in != burn_in) {
      throw ConfigError("pooled summary needs one shared burn-in, got " +
                        std::to_string(t.burn_in) + " and " +
                        std::to_string(burn_in));
    }
  }
  std::vector<long long> pooled;
  for (const auto& t : traces) {
    const auto tail = t.tail_n();
    pooled.insert(pooled.end(), tail.begin(), tail.end());
  }
  return summarize(pooled, level);
}

RealSummary summarize_real(const std::vector<double>& draws, double level) {
  check_level(level);
  if (draws.size() < 2) {
    throw DegenerateDataError(
        "posterior summary needs at least 2 draws, got " +
        std::to_string(draws.size()));
  }
  RealSummary s;
  s.level = level;
  s.n_draws = static_cast<long long>(draws.size());
  std::vector<double> sorted = draws;
  std::sort(sorted.begin(), sorted.end());
  s.mean = mean_of(sorted);
  s.sd = sample_sd(sorted, s.mean);
  s.median = quantile_sorted(sorted, 0.5);
  s.ci = {quantile_sorted(sorted, (1.0 - level) / 2.0),
          quantile_sorted(sorted, (1.0 + level) / 2.0)};
  return s;
}

RealSummary pooled_real_summary(const std::vector<ChainTrace>& traces,
                                TraceParam param, double level) {
  if (traces.empty()) {
    throw DegenerateDataError("no chains to pool");
  }
  const long long burn_in = traces[0].burn_in;
  std::vector<double> pooled;
  for (const auto& t : traces) {
    if (t.burn_in != burn_in) {
      throw ConfigError("pooled summary needs one shared burn-in");
    }
    const auto s = t.series(param);
    if (burn_in < 0 || static_cast<std::size_t>(burn_in) >= s.size()) {
      throw ConfigError("burn-in leaves no retained draws");
    }
    pooled.insert(pooled.end(), s.begin() + burn_in, s.end());
  }
  return summarize_real(pooled, level);
}

}  // namespace drs
