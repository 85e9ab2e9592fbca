#include "drs/simstudy.hpp"

#include <algorithm>
#include <cmath>

#include "drs/distributions.hpp"
#include "drs/errors.hpp"
#include "drs/estimators.hpp"
#include "drs/posterior.hpp"

namespace drs {

PopulationSpec builtin_population(const std::string& name) {
  static const std::pair<double, double> pairs[4] = {
      {0.50, 0.65}, {0.60, 0.70}, {0.80, 0.70}, {0.70, 0.55}};
  if (name.size() == 2 && name[0] == 'P' && name[1] >= '1' && name[1] <= '8') {
    const int idx = name[1] - '1';
    PopulationSpec spec;
    spec.n_true = 500;
    spec.p1dot = pairs[idx % 4].first;
    spec.pdot1 = pairs[idx % 4].second;
    spec.phi = idx < 4 ? 1.25 : 0.80;
    return spec;
  }
  throw ConfigError("unknown population '" + name + "' (expected P1..P8)");
}

DrsData generate_dataset(const PopulationSpec& spec, RngStream& rng) {
  const CellProbabilities cells = cell_probabilities(spec);
  const auto counts = sample_multinomial(spec.n_true, cells, rng);
  return DrsData{counts[0], counts[1], counts[2]};
}

Method parse_method(const std::string& name) {
  if (name == "mt") return Method::kMt;
  if (name == "mb") return Method::kMb;
  if (name == "nour") return Method::kNour;
  if (name == "ab-flat") return Method::kAbFlat;
  if (name == "ab-con") return Method::kAbCon;
  throw ConfigError("unknown method '" + name +
                    "' (expected mt, mb, nour, ab-flat, or ab-con)");
}

std::string to_string(Method method) {
  switch (method) {
    case Method::kMt:
      return "mt";
    case Method::kMb:
      return "mb";
    case Method::kNour:
      return "nour";
    case Method::kAbFlat:
      return "ab-flat";
    case Method::kAbCon:
      return "ab-con";
  }
  return "?";
}

bool is_mcmc(Method method) {
  return method == Method::kAbFlat || method == Method::kAbCon;
}

Loss parse_loss(const std::string& name) {
  if (name == "mean") return Loss::kMean;
  if (name == "median") return Loss::kMedian;
  if (name == "map") return Loss::kMap;
  if (name == "sre") return Loss::kSre;
  throw ConfigError("unknown loss '" + name +
                    "' (expected mean, median, map, or sre)");
}

std::string to_string(Loss loss) {
  switch (loss) {
    case Loss::kMean:
      return "mean";
    case Loss::kMedian:
      return "median";
    case Loss::kMap:
      return "map";
    case Loss::kSre:
      return "sre";
  }
  return "?";
}

CiMode parse_ci_mode(const std::string& name) {
  if (name == "endpoint-average") return CiMode::kEndpointAverage;
  if (name == "pooled-quantiles") return CiMode::kPooledQuantiles;
  throw ConfigError("unknown interval mode '" + name +
                    "' (expected endpoint-average or pooled-quantiles)");
}

std::string to_string(CiMode mode) {
  return mode == CiMode::kEndpointAverage ? "endpoint-average"
                                          : "pooled-quantiles";
}

namespace {

double pick_loss(const RepResult& rep, Loss loss) {
  switch (loss) {
    case Loss::kMean:
      return rep.mean;
    case Loss::kMedian:
      return rep.median;
    case Loss::kMap:
      return rep.map;
    case Loss::kSre:
      return rep.sre;
  }
  return rep.mean;
}

double closed_form_estimate(Method method, const DrsData& data) {
  switch (method) {
    case Method::kMt:
      return estimate_mt(data);
    case Method::kMb:
      return estimate_mb(data);
    case Method::kNour:
      return estimate_nour(data);
    default:
      throw ConfigError("not a closed-form method");
  }
}

std::pair<double, double> histogram_quantiles(
    const std::map<long long, long long>& hist, double level) {
  long long total = 0;
  for (const auto& [value, count] : hist) total += count;
  auto rank_value = [&](double prob) {
    long long rank = static_cast<long long>(
        std::ceil(prob * static_cast<double>(total)));
    rank = std::clamp(rank, 1LL, total);
    long long seen = 0;
    for (const auto& [value, count] : hist) {
      seen += count;
      if (seen >= rank) return static_cast<double>(value);
    }
    return static_cast<double>(hist.rbegin()->first);
  };
  return {rank_value((1.0 - level) / 2.0), rank_value((1.0 + level) / 2.0)};
}

}  // namespace

StudyResult run_study_detailed(const StudyDesign& design) {
  if (design.replications < 1) {
    throw ConfigError("a study needs at least 1 replication, got " +
                      std::to_string(design.replications));
  }
  if (!(design.level >= 0.0 && design.level <= 1.0)) {
    throw ConfigError("interval level must lie in [0,1], got " +
                      std::to_string(design.level));
  }
  cell_probabilities(design.spec);  // surfaces infeasible specs up front

  StudyResult result;
  result.reps.reserve(design.replications);
  std::string last_failure = "none";

  for (long long r = 1; r <= design.replications; ++r) {
    RngStream data_rng(design.master_seed, dataset_stream(r));
    const DrsData data = generate_dataset(design.spec, data_rng);

    RepResult rep;
    try {
      if (is_mcmc(design.method)) {
        ChainConfig cfg = design.chain_cfg;
        cfg.seed = design.master_seed;
        cfg.stream_base = chain_stream_base(r);
        const auto traces =
            design.method == Method::kAbFlat
                ? run_ab_flat(data, design.phi_policy, design.n_policy, cfg)
                : run_ab_con(data, design.n_policy, cfg);
        PosteriorSummary s = pooled_summary(traces, design.level);
        rep.mean = s.mean;
        rep.median = s.median;
        rep.map = s.map;
        rep.sre = s.sre;
        rep.ci_lo = s.ci.first;
        rep.ci_hi = s.ci.second;
        rep.histogram = std::move(s.histogram);
        rep.estimate = pick_loss(rep, design.loss);
      } else {
        const double est = closed_form_estimate(design.method, data);
        rep.estimate = rep.mean = rep.median = rep.map = rep.sre = est;
        rep.ci_lo = rep.ci_hi = est;
      }
    } catch (const ConfigError&) {
      throw;  // a bad design poisons every replication; surface it
    } catch (const ChainFailureError& e) {
      rep.failed = true;
      rep.failure_reason = e.what();
    } catch (const DegenerateDataError& e) {
      rep.failed = true;
      rep.failure_reason = e.what();
    } catch (const DomainError& e) {
      rep.failed = true;
      rep.failure_reason = e.what();
    }
    if (rep.failed) last_failure = rep.failure_reason;
    result.reps.push_back(std::move(rep));
  }

  std::vector<double> estimates;
  for (const auto& rep : result.reps) {
    if (!rep.failed) estimates.push_back(rep.estimate);
  }
  if (estimates.empty()) {
    throw DegenerateDataError(
        "all " + std::to_string(design.replications) +
        " replications failed; last failure: " + last_failure);
  }

  StudyRow& row = result.row;
  row.replications_used = static_cast<long long>(estimates.size());
  row.failure_count = design.replications - row.replications_used;

  double sum = 0.0;
  double sq_err = 0.0;
  for (double est : estimates) {
    sum += est;
    const double d = est - static_cast<double>(design.spec.n_true);
    sq_err += d * d;
  }
  row.average_estimate = sum / estimates.size();
  row.sample_rmse = std::sqrt(sq_err / estimates.size());
  if (estimates.size() >= 2) {
    double ss = 0.0;
    for (double est : estimates) {
      const double d = est - row.average_estimate;
      ss += d * d;
    }
    row.sample_se = std::sqrt(ss / (estimates.size() - 1));
  } else {
    row.sample_se = 0.0;
    row.se_undefined = true;
  }

  if (!is_mcmc(design.method)) {
    // with no per-replication posterior, the interval summarizes the spread
    // of the replication estimates themselves
    std::vector<double> sorted = estimates;
    std::sort(sorted.begin(), sorted.end());
    row.averaged_ci = {quantile_sorted(sorted, (1.0 - design.level) / 2.0),
                       quantile_sorted(sorted, (1.0 + design.level) / 2.0)};
  } else if (design.ci_mode == CiMode::kEndpointAverage) {
    double lo = 0.0;
    double hi = 0.0;
    for (const auto& rep : result.reps) {
      if (rep.failed) continue;
      lo += rep.ci_lo;
      hi += rep.ci_hi;
    }
    row.averaged_ci = {lo / estimates.size(), hi / estimates.size()};
  } else {
    std::map<long long, long long> merged;
    for (const auto& rep : result.reps) {
      if (rep.failed) continue;
      for (const auto& [value, count] : rep.histogram) merged[value] += count;
    }
    row.averaged_ci = histogram_quantiles(merged, design.level);
  }
  return result;
}

StudyRow run_study(const StudyDesign& design) {
  return run_study_detailed(design).row;
}

}  // namespace drs
