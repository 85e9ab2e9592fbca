#pragma once

namespace drs {

// log of the Beta function B(a,b), a,b > 0.
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a,b) for x in [0,1], a,b > 0.
// Continued-fraction evaluation (modified Lentz), switching to the
// symmetric tail when x is past the distribution's bulk.
double reg_incomplete_beta(double x, double a, double b);

// Inverse of I_x(a,b) in x for u in [0,1]: safeguarded Newton iteration
// inside a shrinking bisection bracket. |I_x - u| <= 1e-12 at return.
double inverse_reg_incomplete_beta(double u, double a, double b);

// Same, but with a caller-supplied root bracket [lo, hi] (the root must lie
// inside it). Lets truncated samplers skip the global search.
double inverse_reg_incomplete_beta(double u, double a, double b, double lo,
                                   double hi);

}  // namespace drs
