#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drs/chain.hpp"

namespace drs {

// Multi-chain potential-scale-reduction statistic sqrt(R-hat) on the
// post-burn-in draws. With m chains of n retained draws each:
// W = mean within-chain variance, B/n = variance of chain means,
// V = ((n-1)/n)W + B/n + B/(mn); returns sqrt(V/W), floored at 1.
// Throws DegenerateDiagnosticError when every chain is constant (W = 0).
double psrf(const std::vector<std::vector<double>>& chains, long long burn_in);

double psrf(const std::vector<ChainTrace>& traces, TraceParam param,
            long long burn_in);

struct PsrfReport {
  std::string parameter;
  double r_hat_sqrt = 0.0;  // value at the largest scanned burn-in
  std::vector<std::pair<long long, double>> curve;
  double threshold = 1.1;
  std::optional<long long> accepted_k;  // smallest k under threshold
};

// Evaluates the statistic over a grid of candidate burn-in lengths.
// Chains of unequal length are trimmed to the shortest; the whole grid must
// sit below half that length.
PsrfReport burnin_scan(const std::vector<ChainTrace>& traces, TraceParam param,
                       const std::vector<long long>& k_grid,
                       double threshold = 1.1);

}  // namespace drs
