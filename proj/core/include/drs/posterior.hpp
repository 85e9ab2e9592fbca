#pragma once

#include <map>
#include <utility>
#include <vector>

#include "drs/chain.hpp"

namespace drs {

// Point and interval summaries of a posterior sample of N.
struct PosteriorSummary {
  double mean = 0.0;
  double sd = 0.0;
  double median = 0.0;
  double map = 0.0;  // most frequent integer, ties to the smallest
  double sre = 0.0;  // sum(1/N) / sum(1/N^2), squared-relative-error loss
  std::pair<double, double> ci{0.0, 0.0};
  double level = 0.0;
  long long n_draws = 0;
  std::map<long long, long long> histogram;
};

// Summaries of post-burn-in integer draws. Quantiles use the nearest-rank
// convention (inverse empirical CDF); the interval is the central
// percentile pair at the given level.
PosteriorSummary summarize(const std::vector<long long>& draws, double level);

// Concatenates post-burn-in N draws across chains, then summarizes.
// All chains must share one burn-in index.
PosteriorSummary pooled_summary(const std::vector<ChainTrace>& traces,
                                double level);

// The same treatment for a real-valued component (phi).
struct RealSummary {
  double mean = 0.0;
  double sd = 0.0;
  double median = 0.0;
  std::pair<double, double> ci{0.0, 0.0};
  double level = 0.0;
  long long n_draws = 0;
};

RealSummary summarize_real(const std::vector<double>& draws, double level);

// Pools a post-burn-in real component across chains and summarizes it.
RealSummary pooled_real_summary(const std::vector<ChainTrace>& traces,
                                TraceParam param, double level);

// Nearest-rank quantile of an ascending-sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double prob);

}  // namespace drs
