#pragma once

#include "drs/data.hpp"

namespace drs {

// MLE of N under model M_t (no behavioral response): xdot1*x1dot/x11.
// Throws UndefinedEstimatorError when x11 = 0.
double estimate_mt(const DrsData& data);

// MLE of N under model M_b (no time variation): x0/(1-(x01/x1dot)^2).
// Throws UndefinedEstimatorError when x01 >= x1dot.
double estimate_mb(const DrsData& data);

// Nour's non-model-based estimator: x0 + 2*x11*x10*x01/(x11^2 + x10*x01).
// Throws UndefinedEstimatorError when x11 = 0 and x10*x01 = 0.
double estimate_nour(const DrsData& data);

// Log-likelihood of model M_tb up to the additive constant that does not
// depend on the parameters. Requires n >= x0 and phi*p < 1.
double log_likelihood_mtb(const MtbParams& params, const DrsData& data);

}  // namespace drs
