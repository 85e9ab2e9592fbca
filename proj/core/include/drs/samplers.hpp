#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "drs/chain.hpp"
#include "drs/data.hpp"

namespace drs {

// Directional knowledge about the behavioral response effect phi, mapped to
// a flat prior interval: recapture-prone (phi > 1) -> [1, upper],
// recapture-averse (phi < 1) -> [c_hat, 1], none -> [c_hat, upper].
enum class PhiKnowledge { kGreaterThanOne, kLessThanOne, kNone };

struct PhiPriorPolicy {
  PhiKnowledge knowledge = PhiKnowledge::kNone;
  double upper = 2.0;
  // bypasses the knowledge mapping entirely when set
  std::optional<std::pair<double, double>> explicit_range;
};

enum class NPriorKind { kJeffreys, kPoisson };

// Where the Poisson prior's lambda comes from. The Nour plug-in is only
// meaningful under recapture-prone knowledge and is rejected elsewhere.
enum class LambdaSource { kMbEstimate, kNourEstimate, kFixed };

struct NPriorPolicy {
  NPriorKind kind = NPriorKind::kJeffreys;
  LambdaSource lambda_source = LambdaSource::kMbEstimate;
  double fixed_lambda = 0.0;
};

// Resolves the policy to concrete bounds (alpha, beta) for this table.
// Throws ConfigError when the resolved interval is empty.
std::pair<double, double> resolve_phi_prior(const PhiPriorPolicy& policy,
                                            const DrsData& data);

// Resolves the Poisson prior mean: M_b estimate, Nour estimate, or the
// fixed value. An estimator undefined for this table becomes a ConfigError
// naming it.
double resolve_lambda(const NPriorPolicy& policy, const DrsData& data);

// Flat-prior Gibbs sampler. Each chain records 2k states of
// (N, phi, p, p1dot); the first k are the burn-in half.
std::vector<ChainTrace> run_ab_flat(const DrsData& data,
                                    const PhiPriorPolicy& phi_policy,
                                    const NPriorPolicy& n_policy,
                                    const ChainConfig& cfg);

// Conjugate-prior Gibbs sampler with data-driven GB-I hyperparameters
// a = t*x11/x0, b = t*x10/x0. Each phi update is conjugate at rate p and
// truncated to [c_hat, min(2, 1/p)], the global range restriction
// intersected with the moving support bound.
std::vector<ChainTrace> run_ab_con(const DrsData& data,
                                   const NPriorPolicy& n_policy,
                                   const ChainConfig& cfg);

}  // namespace drs
