#include "drs/chain.hpp"

#include "drs/errors.hpp"

namespace drs {

TraceParam parse_trace_param(const std::string& name) {
  if (name == "N") return TraceParam::kN;
  if (name == "phi") return TraceParam::kPhi;
  if (name == "p") return TraceParam::kP;
  if (name == "p1dot") return TraceParam::kP1dot;
  throw ConfigError("unknown chain parameter '" + name +
                    "' (expected N, phi, p, or p1dot)");
}

std::string to_string(TraceParam param) {
  switch (param) {
    case TraceParam::kN:
      return "N";
    case TraceParam::kPhi:
      return "phi";
    case TraceParam::kP:
      return "p";
    case TraceParam::kP1dot:
      return "p1dot";
  }
  return "?";
}

std::vector<double> ChainTrace::series(TraceParam param) const {
  switch (param) {
    case TraceParam::kN:
      return std::vector<double>(n.begin(), n.end());
    case TraceParam::kPhi:
      return phi;
    case TraceParam::kP:
      return p;
    case TraceParam::kP1dot:
      return p1dot;
  }
  return {};
}

std::vector<long long> ChainTrace::tail_n() const {
  if (burn_in < 0 || static_cast<std::size_t>(burn_in) >= n.size()) {
    throw ConfigError("burn-in " + std::to_string(burn_in) +
                      " leaves no retained draws in a chain of length " +
                      std::to_string(n.size()));
  }
  return std::vector<long long>(n.begin() + burn_in, n.end());
}

}  // namespace drs
