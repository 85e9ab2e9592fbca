#include "drs/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "drs/errors.hpp"

namespace drs {

double psrf(const std::vector<std::vector<double>>& chains,
            long long burn_in) {
  const std::size_t m = chains.size();
  if (m < 2) {
    throw ConfigError("the scale-reduction statistic needs at least 2 chains");
  }
  const std::size_t len = chains[0].size();
  for (const auto& c : chains) {
    if (c.size() != len) {
      throw ConfigError("chains must have equal lengths (got " +
                        std::to_string(c.size()) + " and " +
                        std::to_string(len) + ")");
    }
  }
  if (burn_in < 0 || static_cast<std::size_t>(burn_in) >= len) {
    throw ConfigError("burn-in " + std::to_string(burn_in) +
                      " leaves no draws in chains of length " +
                      std::to_string(len));
  }
  const std::size_t n = len - static_cast<std::size_t>(burn_in);
  if (n < 2) {
    throw ConfigError(
        "the scale-reduction statistic needs >= 2 retained draws per chain");
  }

  std::vector<double> means(m, 0.0);
  std::vector<double> vars(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double* tail = chains[i].data() + burn_in;
    double s = 0.0;
    for (std::size_t h = 0; h < n; ++h) s += tail[h];
    means[i] = s / n;
    double ss = 0.0;
    for (std::size_t h = 0; h < n; ++h) {
      const double d = tail[h] - means[i];
      ss += d * d;
    }
    vars[i] = ss / (n - 1);
  }

  double w = 0.0;
  for (double v : vars) w += v;
  w /= m;
  if (!(w > 0.0)) {
    throw DegenerateDiagnosticError(
        "zero within-chain variance: every chain is constant after burn-in");
  }

  double grand = 0.0;
  for (double v : means) grand += v;
  grand /= m;
  double b_over_n = 0.0;
  for (double v : means) {
    const double d = v - grand;
    b_over_n += d * d;
  }
  b_over_n /= (m - 1);

  const double v_hat =
      (static_cast<double>(n - 1) / n) * w + b_over_n + b_over_n / m;
  return std::max(1.0, std::sqrt(v_hat / w));
}

double psrf(const std::vector<ChainTrace>& traces, TraceParam param,
            long long burn_in) {
  std::vector<std::vector<double>> chains;
  chains.reserve(traces.size());
  for (const auto& t : traces) chains.push_back(t.series(param));
  return psrf(chains, burn_in);
}

PsrfReport burnin_scan(const std::vector<ChainTrace>& traces, TraceParam param,
                       const std::vector<long long>& k_grid,
                       double threshold) {
  if (k_grid.empty()) {
    throw ConfigError("burn-in scan needs a non-empty grid");
  }
  if (traces.size() < 2) {
    throw ConfigError("burn-in scan needs at least 2 chains");
  }
  std::size_t shortest = traces[0].size();
  for (const auto& t : traces) shortest = std::min(shortest, t.size());

  std::vector<long long> grid = k_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.front() < 0) {
    throw ConfigError("burn-in grid values must be >= 0");
  }
  if (2 * grid.back() >= static_cast<long long>(shortest)) {
    throw ConfigError("largest grid burn-in " + std::to_string(grid.back()) +
                      " must stay below half the shortest chain length " +
                      std::to_string(shortest));
  }

  std::vector<std::vector<double>> chains;
  chains.reserve(traces.size());
  for (const auto& t : traces) {
    auto s = t.series(param);
    s.resize(shortest);
    chains.push_back(std::move(s));
  }

  PsrfReport report;
  report.parameter = to_string(param);
  report.threshold = threshold;
  for (long long k : grid) {
    const double value = psrf(chains, k);
    report.curve.emplace_back(k, value);
    if (!report.accepted_k && value < threshold) report.accepted_k = k;
  }
  report.r_hat_sqrt = report.curve.back().second;
  return report;
}

}  // namespace drs
