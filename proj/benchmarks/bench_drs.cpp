#include <benchmark/benchmark.h>

#include <vector>

#include "drs/data.hpp"
#include "drs/diagnostics.hpp"
#include "drs/distributions.hpp"
#include "drs/rng.hpp"
#include "drs/samplers.hpp"
#include "drs/special.hpp"

namespace {

// shapes in the range the samplers actually hit on the built-in tables
constexpr double kA = 223.0;
constexpr double kB = 128.0;

void BM_reg_incomplete_beta(benchmark::State& state) {
  const double xs[5] = {0.22, 0.41, 0.58, 0.66, 0.83};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(drs::reg_incomplete_beta(xs[i], kA, kB));
    i = (i + 1) % 5;
  }
}
BENCHMARK(BM_reg_incomplete_beta);

void BM_inverse_reg_incomplete_beta(benchmark::State& state) {
  const double us[5] = {0.05, 0.27, 0.5, 0.73, 0.95};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(drs::inverse_reg_incomplete_beta(us[i], kA, kB));
    i = (i + 1) % 5;
  }
}
BENCHMARK(BM_inverse_reg_incomplete_beta);

void BM_truncated_scaled_beta(benchmark::State& state) {
  drs::RngStream rng(11, 1);
  const drs::TruncatedScaledBeta d{kA, kB, 0.45, 1.0, 2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(drs::sample_truncated_scaled_beta(d, rng));
  }
}
BENCHMARK(BM_truncated_scaled_beta);

void BM_negative_binomial(benchmark::State& state) {
  drs::RngStream rng(11, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(drs::sample_negative_binomial(394, 0.79, rng));
  }
}
BENCHMARK(BM_negative_binomial);

void BM_poisson(benchmark::State& state) {
  drs::RngStream rng(11, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(drs::sample_poisson(105.0, rng));
  }
}
BENCHMARK(BM_poisson);

void BM_ab_flat_chain(benchmark::State& state) {
  const drs::DrsData data{222, 131, 105};
  drs::PhiPriorPolicy phi_policy;
  phi_policy.knowledge = drs::PhiKnowledge::kGreaterThanOne;
  drs::NPriorPolicy n_policy;
  drs::ChainConfig cfg;
  cfg.k = state.range(0);
  cfg.n_chains = 1;
  cfg.seed = 11;
  for (auto _ : state) {
    benchmark::DoNotOptimize(drs::run_ab_flat(data, phi_policy, n_policy, cfg));
  }
  state.SetItemsProcessed(state.iterations() * 2 * cfg.k);
}
BENCHMARK(BM_ab_flat_chain)->Arg(500)->Arg(2000);

void BM_ab_con_chain(benchmark::State& state) {
  const drs::DrsData data{222, 131, 105};
  drs::NPriorPolicy n_policy;
  drs::ChainConfig cfg;
  cfg.k = state.range(0);
  cfg.n_chains = 1;
  cfg.seed = 11;
  for (auto _ : state) {
    benchmark::DoNotOptimize(drs::run_ab_con(data, n_policy, cfg));
  }
  state.SetItemsProcessed(state.iterations() * 2 * cfg.k);
}
BENCHMARK(BM_ab_con_chain)->Arg(500)->Arg(2000);

void BM_psrf(benchmark::State& state) {
  const drs::DrsData data{222, 131, 105};
  drs::PhiPriorPolicy phi_policy;
  phi_policy.knowledge = drs::PhiKnowledge::kGreaterThanOne;
  drs::NPriorPolicy n_policy;
  drs::ChainConfig cfg;
  cfg.k = 2000;
  cfg.n_chains = 5;
  cfg.seed = 11;
  const auto traces = drs::run_ab_flat(data, phi_policy, n_policy, cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(drs::psrf(traces, drs::TraceParam::kN, cfg.k));
  }
}
BENCHMARK(BM_psrf);

}  // namespace

BENCHMARK_MAIN();
