#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "drs/diagnostics.hpp"
#include "drs/errors.hpp"
#include "drs/rng.hpp"
#include "drs/samplers.hpp"
#include "drs/distributions.hpp"
#include "support.hpp"

using namespace drs;

namespace {

std::vector<double> normal_chain(std::size_t len, double mean, double sd,
                                 std::uint64_t seed, std::uint64_t stream) {
  RngStream rng(seed, stream);
  std::vector<double> out(len);
  for (auto& v : out) v = mean + sd * sample_normal(rng);
  return out;
}

ChainTrace trace_from(std::vector<double> values) {
  ChainTrace t;
  t.phi = values;
  t.p = values;
  t.p1dot = std::move(values);
  t.n.assign(t.phi.size(), 1);
  for (std::size_t i = 0; i < t.phi.size(); ++i) {
    t.n[i] = static_cast<long long>(100.0 + 10.0 * t.phi[i]);
  }
  return t;
}

}  // namespace

TEST_CASE("identical chains floor at one") {
  const auto c = normal_chain(500, 0.0, 1.0, 7, 1);
  CHECK(psrf({c, c}, 0) == 1.0);
  CHECK(psrf({c, c, c}, 100) == 1.0);
}

TEST_CASE("hand-computed two-chain value") {
  // means 1 and 11, within-variance 2 each: W = 2, B/n = 50,
  // V = (1/2)*2 + 50 + 25 = 76, sqrt(76/2) = sqrt(38)
  const std::vector<std::vector<double>> chains{{0.0, 2.0}, {10.0, 12.0}};
  CHECK(psrf(chains, 0) == doctest::Approx(std::sqrt(38.0)).epsilon(1e-12));
}

TEST_CASE("separated means blow the statistic up") {
  const auto a = normal_chain(1000, 0.0, 1.0, 7, 1);
  const auto b = normal_chain(1000, 10.0, 1.0, 7, 2);
  CHECK(psrf({a, b}, 0) > 2.0);
}

TEST_CASE("same-distribution chains stay near one") {
  const auto a = normal_chain(2000, 5.0, 2.0, 7, 1);
  const auto b = normal_chain(2000, 5.0, 2.0, 7, 2);
  const auto c = normal_chain(2000, 5.0, 2.0, 7, 3);
  const double v = psrf({a, b, c}, 0);
  CHECK(v >= 1.0);
  CHECK(v < 1.05);
}

TEST_CASE("affine maps leave the statistic unchanged") {
  const auto a = normal_chain(400, 0.0, 1.0, 9, 1);
  const auto b = normal_chain(400, 1.0, 1.5, 9, 2);
  const double base = psrf({a, b}, 50);
  auto map = [](std::vector<double> v) {
    for (auto& x : v) x = -3.0 + 40.0 * x;
    return v;
  };
  const double mapped = psrf({map(a), map(b)}, 50);
  CHECK(mapped == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("growing separation grows the statistic") {
  const auto a = normal_chain(500, 0.0, 1.0, 11, 1);
  double prev = 0.0;
  for (double shift : {0.5, 1.0, 2.0, 4.0}) {
    auto b = a;
    for (auto& x : b) x += shift;
    const double v = psrf({a, b}, 0);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("degenerate and invalid inputs") {
  const std::vector<double> flat(100, 3.0);
  CHECK_THROWS_AS(psrf({flat, flat}, 0), DegenerateDiagnosticError);

  const auto a = normal_chain(100, 0.0, 1.0, 13, 1);
  CHECK_THROWS_AS(psrf({a}, 0), ConfigError);
  CHECK_THROWS_AS(psrf(std::vector<std::vector<double>>{}, 0), ConfigError);

  auto b = a;
  b.pop_back();
  CHECK_THROWS_WITH_AS(psrf({a, b}, 0),
                       doctest::Contains("equal lengths"), ConfigError);

  CHECK_THROWS_AS(psrf({a, a}, -1), ConfigError);
  CHECK_THROWS_AS(psrf({a, a}, 100), ConfigError);
  CHECK_THROWS_WITH_AS(psrf({a, a}, 99),
                       doctest::Contains(">= 2 retained draws"), ConfigError);

  // constant only after burn-in
  auto c1 = flat;
  auto c2 = flat;
  c1[0] = 0.0;
  c2[0] = 1.0;
  CHECK_THROWS_AS(psrf({c1, c2}, 1), DegenerateDiagnosticError);
}

TEST_CASE("scan accepts the smallest passing burn-in") {
  std::vector<ChainTrace> traces;
  for (int j = 0; j < 3; ++j) {
    traces.push_back(trace_from(normal_chain(1500, 2.0, 1.0, 17, 1 + j)));
  }
  const auto report = burnin_scan(traces, TraceParam::kPhi, {0, 100, 400});
  REQUIRE(report.curve.size() == 3);
  CHECK(report.parameter == "phi");
  CHECK(report.threshold == 1.1);
  REQUIRE(report.accepted_k.has_value());
  CHECK(*report.accepted_k == 0);
  CHECK(report.curve.front().first == 0);
  CHECK(report.curve.back().first == 400);
  CHECK(report.r_hat_sqrt == report.curve.back().second);
  for (const auto& [k, v] : report.curve) CHECK(v < 1.1);
}

TEST_CASE("scan sees through an initial drift") {
  // chains sit 40*j apart until draw 600, identical distributions after
  std::vector<ChainTrace> traces;
  for (int j = 0; j < 3; ++j) {
    auto vals = normal_chain(1500, 0.0, 1.0, 19, 1 + j);
    for (std::size_t h = 0; h < 600; ++h) vals[h] += 40.0 * j;
    traces.push_back(trace_from(std::move(vals)));
  }
  const auto report =
      burnin_scan(traces, TraceParam::kPhi, {0, 150, 600, 700});
  REQUIRE(report.accepted_k.has_value());
  CHECK(*report.accepted_k == 600);
  CHECK(report.curve[0].second > 1.15);
  CHECK(report.curve[1].second > 1.15);
  CHECK(report.curve[2].second < 1.05);
}

TEST_CASE("scan grid is sorted and deduplicated") {
  std::vector<ChainTrace> traces;
  for (int j = 0; j < 2; ++j) {
    traces.push_back(trace_from(normal_chain(900, 0.0, 1.0, 23, 1 + j)));
  }
  const auto report =
      burnin_scan(traces, TraceParam::kP, {400, 0, 100, 400, 100});
  REQUIRE(report.curve.size() == 3);
  CHECK(report.curve[0].first == 0);
  CHECK(report.curve[1].first == 100);
  CHECK(report.curve[2].first == 400);
}

TEST_CASE("scan trims unequal chains to the shortest") {
  auto long_chain = normal_chain(1200, 0.0, 1.0, 29, 1);
  auto short_chain = normal_chain(900, 0.0, 1.0, 29, 2);
  // a wild tail beyond the shortest length must not affect the scan
  for (std::size_t h = 900; h < 1200; ++h) long_chain[h] += 1e6;
  std::vector<ChainTrace> traces;
  traces.push_back(trace_from(std::move(long_chain)));
  traces.push_back(trace_from(std::move(short_chain)));
  const auto report = burnin_scan(traces, TraceParam::kPhi, {0, 200});
  for (const auto& [k, v] : report.curve) CHECK(v < 1.1);
}

TEST_CASE("scan rejects bad grids") {
  std::vector<ChainTrace> traces;
  for (int j = 0; j < 2; ++j) {
    traces.push_back(trace_from(normal_chain(1000, 0.0, 1.0, 31, 1 + j)));
  }
  CHECK_THROWS_WITH_AS(burnin_scan(traces, TraceParam::kN, {}),
                       doctest::Contains("non-empty grid"), ConfigError);
  CHECK_THROWS_AS(burnin_scan(traces, TraceParam::kN, {-5, 100}), ConfigError);
  CHECK_THROWS_WITH_AS(burnin_scan(traces, TraceParam::kN, {0, 500}),
                       doctest::Contains("half the shortest"), ConfigError);
  CHECK_THROWS_AS(
      burnin_scan({traces[0]}, TraceParam::kN, std::vector<long long>{0}),
      ConfigError);
}

TEST_CASE("flat sampler chains converge on the expected table") {
  const DrsData table{292, 108, 58};
  PhiPriorPolicy phi_policy;
  phi_policy.knowledge = PhiKnowledge::kGreaterThanOne;
  NPriorPolicy n_policy;
  ChainConfig cfg;
  cfg.k = 2000;
  cfg.n_chains = 5;
  cfg.seed = 3;

  const auto traces = run_ab_flat(table, phi_policy, n_policy, cfg);
  CHECK(psrf(traces, TraceParam::kN, cfg.k) < 1.1);
  CHECK(psrf(traces, TraceParam::kPhi, cfg.k) < 1.1);
}

TEST_CASE("conjugate sampler scan settles within its burn-in half") {
  const DrsData table{292, 108, 58};
  NPriorPolicy n_policy;
  ChainConfig cfg;
  cfg.k = 7500;
  cfg.n_chains = 5;
  cfg.seed = 3;
  cfg.t = 20.0;

  const auto traces = run_ab_con(table, n_policy, cfg);
  const auto report = burnin_scan(
      traces, TraceParam::kN, {500, 1000, 2000, 3500, 5000, 7000});
  REQUIRE(report.accepted_k.has_value());
  CHECK(*report.accepted_k <= 7000);
}
