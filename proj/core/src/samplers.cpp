#include "drs/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drs/distributions.hpp"
#include "drs/errors.hpp"
#include "drs/estimators.hpp"

namespace drs {

namespace {

constexpr int kMaxRedraws = 100;

// Global range restriction on phi for the conjugate-prior sampler; the
// moving support bound 1/p tightens it whenever 1/p < 2.
constexpr double kPhiRangeCap = 2.0;

void validate_chain_config(const ChainConfig& cfg) {
  if (cfg.k < 1) {
    throw ConfigError("burn-in length must be >= 1, got " +
                      std::to_string(cfg.k));
  }
  if (cfg.n_chains < 1) {
    throw ConfigError("need at least one chain, got " +
                      std::to_string(cfg.n_chains));
  }
}

// N = x0 + M with M from the conditional selected by the N prior:
// Jeffreys pi(N) ~ 1/N gives a negative binomial, Poisson(lambda) gives
// a Poisson thinned by the miss probability.
long long draw_n(const DrsData& data, double p1dot, double p, NPriorKind kind,
                 double lambda, RngStream& rng) {
  const double q = (1.0 - p1dot) * (1.0 - p);
  if (kind == NPriorKind::kJeffreys) {
    return data.x0() + sample_negative_binomial(data.x0(), 1.0 - q, rng);
  }
  return data.x0() + sample_poisson(lambda * q, rng);
}

struct ChainAccum {
  ChainTrace trace;

  void reserve(long long total) {
    trace.n.reserve(total);
    trace.phi.reserve(total);
    trace.p.reserve(total);
    trace.p1dot.reserve(total);
  }

  void record(long long n, double phi, double p, double p1dot) {
    trace.n.push_back(n);
    trace.phi.push_back(phi);
    trace.p.push_back(p);
    trace.p1dot.push_back(p1dot);
  }
};

}  // namespace

std::pair<double, double> resolve_phi_prior(const PhiPriorPolicy& policy,
                                            const DrsData& data) {
  validate(data);
  if (data.x1dot() < 1) {
    throw DegenerateDataError("phi prior resolution needs x1dot >= 1");
  }
  double alpha;
  double beta;
  if (policy.explicit_range) {
    alpha = policy.explicit_range->first;
    beta = policy.explicit_range->second;
    if (alpha < 0.0) {
      throw ConfigError("phi range lower bound must be >= 0, got " +
                        std::to_string(alpha));
    }
  } else {
    switch (policy.knowledge) {
      case PhiKnowledge::kGreaterThanOne:
        alpha = 1.0;
        beta = policy.upper;
        break;
      case PhiKnowledge::kLessThanOne:
        alpha = c_hat(data);
        beta = 1.0;
        break;
      case PhiKnowledge::kNone:
        alpha = c_hat(data);
        beta = policy.upper;
        break;
      default:
        throw ConfigError("unknown phi knowledge");
    }
  }
  if (!(alpha < beta)) {
    throw ConfigError("resolved phi prior interval [" + std::to_string(alpha) +
                      ", " + std::to_string(beta) + "] is empty");
  }
  return {alpha, beta};
}

double resolve_lambda(const NPriorPolicy& policy, const DrsData& data) {
  switch (policy.lambda_source) {
    case LambdaSource::kMbEstimate:
      try {
        return estimate_mb(data);
      } catch (const UndefinedEstimatorError& e) {
        throw ConfigError(std::string("Poisson prior mean from M_b: ") +
                          e.what());
      }
    case LambdaSource::kNourEstimate:
      try {
        return estimate_nour(data);
      } catch (const UndefinedEstimatorError& e) {
        throw ConfigError(std::string("Poisson prior mean from Nour: ") +
                          e.what());
      }
    case LambdaSource::kFixed:
      if (!(policy.fixed_lambda > 0.0)) {
        throw ConfigError("fixed Poisson prior mean must be positive, got " +
                          std::to_string(policy.fixed_lambda));
      }
      return policy.fixed_lambda;
  }
  throw ConfigError("unknown lambda source");
}

std::vector<ChainTrace> run_ab_flat(const DrsData& data,
                                    const PhiPriorPolicy& phi_policy,
                                    const NPriorPolicy& n_policy,
                                    const ChainConfig& cfg) {
  validate(data);
  validate_chain_config(cfg);
  if (data.x11 < 1) {
    throw DegenerateDataError(
        "the flat-prior sampler needs x11 >= 1 (c_hat would be 0)");
  }
  if (cfg.p_update == PUpdateRule::kLloyd && data.x01 < 1) {
    throw DegenerateDataError("the Lloyd p-update needs x01 >= 1");
  }
  if (n_policy.kind == NPriorKind::kPoisson &&
      n_policy.lambda_source == LambdaSource::kNourEstimate &&
      phi_policy.knowledge != PhiKnowledge::kGreaterThanOne) {
    throw ConfigError(
        "the Nour plug-in for the Poisson prior mean is only available "
        "with phi knowledge gt1");
  }
  const auto [alpha, beta] = resolve_phi_prior(phi_policy, data);
  const double lambda = n_policy.kind == NPriorKind::kPoisson
                            ? resolve_lambda(n_policy, data)
                            : 0.0;
  const double c = c_hat(data);
  const long long x0 = data.x0();
  const long long x1dot = data.x1dot();
  const long long total = 2 * cfg.k;

  std::vector<ChainTrace> traces;
  traces.reserve(cfg.n_chains);
  for (int j = 0; j < cfg.n_chains; ++j) {
    RngStream rng(cfg.seed, cfg.stream_base + static_cast<std::uint64_t>(j));
    ChainAccum acc;
    acc.reserve(total);
    acc.trace.burn_in = cfg.k;
    acc.trace.seed = cfg.seed;
    acc.trace.stream = rng.stream();

    // overdispersed start: chain j begins at x0 scaled up to 5*x0
    long long n =
        cfg.n_chains > 1
            ? std::llround(x0 * (1.0 + 4.0 * j / (cfg.n_chains - 1.0)))
            : x0;
    double phi = 0.0;
    double p = 0.0;
    {
      int tries = 0;
      for (;;) {
        phi = rng.uniform(alpha, beta);
        p = c / phi;
        if (p > 0.0 && p < 1.0) break;
        if (++tries > kMaxRedraws) {
          throw ChainFailureError(
              "chain " + std::to_string(j) +
              ": no feasible initial p = c_hat/phi on [" +
              std::to_string(alpha) + ", " + std::to_string(beta) + "] after " +
              std::to_string(kMaxRedraws) + " draws");
        }
        ++acc.trace.feasibility_redraws;
      }
    }
    double p1dot = sample_beta(x1dot + 1.0, n - x1dot + 1.0, rng);

    for (long long h = 1; h <= total; ++h) {
      // (1) phi from its conditional at the previous p, kept only when the
      // induced p = c_hat/phi is a probability
      double p_eval = 0.0;
      {
        int tries = 0;
        for (;;) {
          const double hi = std::min(beta, 1.0 / p);
          if (!(hi > alpha)) {
            throw ChainFailureError(
                "chain " + std::to_string(j) + " iteration " +
                std::to_string(h) + ": phi truncation interval [" +
                std::to_string(alpha) + ", " + std::to_string(hi) +
                "] is empty");
          }
          const TruncatedScaledBeta d{data.x11 + 1.0, data.x10 + 1.0, p, alpha,
                                      hi};
          const double cand = sample_truncated_scaled_beta(d, rng);
          p_eval = c / cand;
          if (p_eval > 0.0 && p_eval < 1.0) {
            phi = cand;
            break;
          }
          if (++tries > kMaxRedraws) {
            throw ChainFailureError("chain " + std::to_string(j) +
                                    " iteration " + std::to_string(h) +
                                    ": p = c_hat/phi stayed infeasible after " +
                                    std::to_string(kMaxRedraws) +
                                    " phi redraws");
          }
          ++acc.trace.feasibility_redraws;
        }
      }

      // (2) N at the fresh phi, then the p refresh
      n = draw_n(data, p1dot, p_eval, n_policy.kind, lambda, rng);
      if (cfg.p_update == PUpdateRule::kLloyd) {
        int tries = 0;
        for (;;) {
          const double pl = n > x1dot ? static_cast<double>(data.x01) /
                                            static_cast<double>(n - x1dot)
                                      : 1.0;
          if (pl > 0.0 && pl < 1.0) {
            p = pl;
            break;
          }
          if (++tries > kMaxRedraws) {
            throw ChainFailureError("chain " + std::to_string(j) +
                                    " iteration " + std::to_string(h) +
                                    ": Lloyd p-update found no N with "
                                    "N - x1dot > x01 after " +
                                    std::to_string(kMaxRedraws) + " redraws");
          }
          ++acc.trace.feasibility_redraws;
          n = draw_n(data, p1dot, p_eval, n_policy.kind, lambda, rng);
        }
      } else {
        p = p_eval;
      }

      // (3) p1dot
      p1dot = sample_beta(x1dot + 1.0, n - x1dot + 1.0, rng);
      acc.record(n, phi, p, p1dot);
    }
    traces.push_back(std::move(acc.trace));
  }
  return traces;
}

std::vector<ChainTrace> run_ab_con(const DrsData& data,
                                   const NPriorPolicy& n_policy,
                                   const ChainConfig& cfg) {
  validate(data);
  validate_chain_config(cfg);
  if (data.x11 < 1) {
    throw DegenerateDataError(
        "the conjugate-prior sampler needs x11 >= 1 (c_hat would be 0)");
  }
  if (data.x01 < 1) {
    throw DegenerateDataError(
        "the conjugate-prior sampler needs x01 >= 1 (with x01 = 0 the N "
        "floor x1dot + c_hat*x01 would exclude N = x0 itself)");
  }
  if (data.x10 < 1) {
    throw DegenerateDataError(
        "the conjugate-prior sampler needs x10 >= 1 (hyperparameter "
        "b = t*x10/x0 would vanish)");
  }
  if (!(cfg.t > 0.0)) {
    throw ConfigError("prior tuning t must be positive, got " +
                      std::to_string(cfg.t));
  }
  const double lambda = n_policy.kind == NPriorKind::kPoisson
                            ? resolve_lambda(n_policy, data)
                            : 0.0;
  const double c = c_hat(data);
  const long long x0 = data.x0();
  const long long x1dot = data.x1dot();
  const double a = cfg.t * data.x11 / static_cast<double>(x0);
  const double b = cfg.t * data.x10 / static_cast<double>(x0);
  const long long total = 2 * cfg.k;

  std::vector<ChainTrace> traces;
  traces.reserve(cfg.n_chains);
  for (int j = 0; j < cfg.n_chains; ++j) {
    RngStream rng(cfg.seed, cfg.stream_base + static_cast<std::uint64_t>(j));
    ChainAccum acc;
    acc.reserve(total);
    acc.trace.burn_in = cfg.k;
    acc.trace.seed = cfg.seed;
    acc.trace.stream = rng.stream();

    double p1dot = rng.uniform_pos();
    const double p0 = c + (1.0 - c) * rng.uniform_pos();
    double beta_cur = 1.0 / p0;
    double phi = sample_truncated_scaled_beta(
        TruncatedScaledBeta{a, b, 1.0 / beta_cur, c,
                            std::min(kPhiRangeCap, beta_cur)},
        rng);
    long long n = draw_n(data, p1dot, p0, n_policy.kind, lambda, rng);
    double p = p0;

    for (long long h = 1; h <= total; ++h) {
      // (1) p1dot at the current N; phi conjugate at rate p, truncated to
      // [c_hat, min(2, 1/p)]
      p1dot = sample_beta(x1dot + 1.0, n - x1dot + 1.0, rng);
      if (h >= 2) {
        beta_cur = 1.0 / p;
      }
      phi = sample_truncated_scaled_beta(
          TruncatedScaledBeta{data.x11 + a, data.x10 + b, 1.0 / beta_cur, c,
                              std::min(kPhiRangeCap, beta_cur)},
          rng);

      // (2) the degenerate relation
      p = c / phi;

      // (3) N, kept above the floor x1dot + c_hat*x01
      {
        int tries = 0;
        for (;;) {
          const long long cand =
              draw_n(data, p1dot, p, n_policy.kind, lambda, rng);
          if (static_cast<double>(cand - x1dot) > c * data.x01) {
            n = cand;
            break;
          }
          if (++tries > kMaxRedraws) {
            throw ChainFailureError("chain " + std::to_string(j) +
                                    " iteration " + std::to_string(h) +
                                    ": no N with N - x1dot > c_hat*x01 after " +
                                    std::to_string(kMaxRedraws) + " redraws");
          }
          ++acc.trace.feasibility_redraws;
        }
      }
      acc.record(n, phi, p, p1dot);
    }
    traces.push_back(std::move(acc.trace));
  }
  return traces;
}

}  // namespace drs
