#include "drs/estimators.hpp"

#include <cmath>
#include <string>

#include "drs/errors.hpp"

namespace drs {

void validate(const DrsData& data) {
  if (data.x11 < 0 || data.x10 < 0 || data.x01 < 0) {
    throw DegenerateDataError("capture counts must be non-negative, got x11=" +
                              std::to_string(data.x11) +
                              " x10=" + std::to_string(data.x10) +
                              " x01=" + std::to_string(data.x01));
  }
  if (data.x0() < 1) {
    throw DegenerateDataError("capture table is empty: x0 = 0");
  }
}

double c_hat(const DrsData& data) {
  validate(data);
  if (data.x1dot() < 1) {
    throw DegenerateDataError("c_hat needs x1dot >= 1, got x1dot = 0");
  }
  return static_cast<double>(data.x11) / static_cast<double>(data.x1dot());
}

double estimate_mt(const DrsData& data) {
  validate(data);
  if (data.x11 < 1) {
    throw UndefinedEstimatorError("M_t estimator", "x11 = 0");
  }
  return static_cast<double>(data.xdot1()) *
         static_cast<double>(data.x1dot()) / static_cast<double>(data.x11);
}

double estimate_mb(const DrsData& data) {
  validate(data);
  if (data.x1dot() < 1) {
    throw UndefinedEstimatorError("M_b estimator", "x1dot = 0");
  }
  if (data.x01 >= data.x1dot()) {
    throw UndefinedEstimatorError(
        "M_b estimator", "x01 >= x1dot makes the denominator non-positive");
  }
  const double ratio =
      static_cast<double>(data.x01) / static_cast<double>(data.x1dot());
  return static_cast<double>(data.x0()) / (1.0 - ratio * ratio);
}

double estimate_nour(const DrsData& data) {
  validate(data);
  const double denom = static_cast<double>(data.x11) * data.x11 +
                       static_cast<double>(data.x10) * data.x01;
  if (denom <= 0.0) {
    throw UndefinedEstimatorError("Nour estimator",
                                  "x11 = 0 and x10*x01 = 0");
  }
  const double num =
      2.0 * data.x11 * static_cast<double>(data.x10) * data.x01;
  return static_cast<double>(data.x0()) + num / denom;
}

double log_likelihood_mtb(const MtbParams& params, const DrsData& data) {
  validate(data);
  const double n = static_cast<double>(params.n);
  const double x0 = static_cast<double>(data.x0());
  if (params.n < data.x0()) {
    throw DomainError("log_likelihood_mtb: n < x0 (" +
                      std::to_string(params.n) + " < " +
                      std::to_string(data.x0()) + ")");
  }
  if (!(params.p1dot > 0.0 && params.p1dot < 1.0) ||
      !(params.p > 0.0 && params.p < 1.0) || !(params.phi > 0.0)) {
    throw DomainError(
        "log_likelihood_mtb: need p1dot, p in (0,1) and phi > 0");
  }
  const double c = params.c();
  if (c >= 1.0) {
    throw DomainError("log_likelihood_mtb: phi*p >= 1, got " +
                      std::to_string(c));
  }
  return std::lgamma(n + 1.0) - std::lgamma(n - x0 + 1.0) +
         data.x11 * std::log(params.phi) +
         data.x1dot() * std::log(params.p1dot) +
         data.xdot1() * std::log(params.p) +
         (n - data.x1dot()) * std::log1p(-params.p1dot) +
         (n - x0) * std::log1p(-params.p) + data.x10 * std::log1p(-c);
}

}  // namespace drs
