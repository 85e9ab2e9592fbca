#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "drs/cells.hpp"
#include "drs/data.hpp"
#include "drs/rng.hpp"
#include "drs/samplers.hpp"

namespace drs {

// The study populations: four (p1dot, pdot1) pairs at phi = 1.25 (P1-P4)
// and the same pairs at phi = 0.80 (P5-P8), all of true size 500.
PopulationSpec builtin_population(const std::string& name);

// One synthetic capture table: a multinomial draw over the four cells with
// the both-missed count discarded.
DrsData generate_dataset(const PopulationSpec& spec, RngStream& rng);

enum class Method { kMt, kMb, kNour, kAbFlat, kAbCon };

Method parse_method(const std::string& name);
std::string to_string(Method method);

bool is_mcmc(Method method);

// Which posterior point estimate a study reports per replication.
enum class Loss { kMean, kMedian, kMap, kSre };

Loss parse_loss(const std::string& name);
std::string to_string(Loss loss);

// How the per-replication intervals become one table interval: average the
// endpoints, or pool every replication's histogram and take quantiles.
enum class CiMode { kEndpointAverage, kPooledQuantiles };

CiMode parse_ci_mode(const std::string& name);
std::string to_string(CiMode mode);

struct StudyDesign {
  PopulationSpec spec;
  long long replications = 50;
  Method method = Method::kAbFlat;
  PhiPriorPolicy phi_policy;
  NPriorPolicy n_policy;
  ChainConfig chain_cfg;
  Loss loss = Loss::kMean;
  CiMode ci_mode = CiMode::kEndpointAverage;
  double level = 0.95;
  std::uint64_t master_seed = 0;
};

// One replication's outcome. For closed-form methods every point estimate
// field carries the single closed-form value.
struct RepResult {
  bool failed = false;
  std::string failure_reason;
  double estimate = 0.0;  // the configured loss
  double mean = 0.0;
  double median = 0.0;
  double map = 0.0;
  double sre = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::map<long long, long long> histogram;  // MCMC only
};

struct StudyRow {
  double average_estimate = 0.0;
  double sample_se = 0.0;
  double sample_rmse = 0.0;
  std::pair<double, double> averaged_ci{0.0, 0.0};
  long long failure_count = 0;
  long long replications_used = 0;
  bool se_undefined = false;  // true when only one usable replication
};

struct StudyResult {
  StudyRow row;
  std::vector<RepResult> reps;
};

// Runs the full design: replication r draws its dataset on stream r of the
// master seed and its chains on the dedicated chain block, so results do
// not depend on execution order. Failed replications are excluded from the
// moments and counted.
StudyResult run_study_detailed(const StudyDesign& design);

StudyRow run_study(const StudyDesign& design);

}  // namespace drs
