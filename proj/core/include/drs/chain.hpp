#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drs/rng.hpp"

namespace drs {

// Which component of a chain a diagnostic or export refers to.
enum class TraceParam { kN, kPhi, kP, kP1dot };

TraceParam parse_trace_param(const std::string& name);
std::string to_string(TraceParam param);

// How AB-Flat refreshes p each iteration: the degenerate relation
// p = c_hat/phi, or Lloyd's identity p = x01/(N - x1dot).
enum class PUpdateRule { kCOverPhi, kLloyd };

struct ChainConfig {
  long long k = 2000;  // burn-in length; a chain runs 2k iterations
  int n_chains = 5;
  std::uint64_t seed = 0;
  std::uint64_t stream_base = chain_stream_base(1);  // chain j -> base + j
  PUpdateRule p_update = PUpdateRule::kCOverPhi;     // AB-Flat only
  double t = 20.0;  // AB-Con prior variance tuning
};

// One chain's recorded states plus the burn-in index that splits warmup
// from the retained half.
struct ChainTrace {
  std::vector<long long> n;
  std::vector<double> phi;
  std::vector<double> p;
  std::vector<double> p1dot;
  long long burn_in = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  long long feasibility_redraws = 0;

  std::size_t size() const { return n.size(); }

  // the selected component as doubles (N converted)
  std::vector<double> series(TraceParam param) const;

  // post-burn-in N draws
  std::vector<long long> tail_n() const;
};

}  // namespace drs
