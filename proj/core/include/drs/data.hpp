#pragma once

#include <cstdint>

namespace drs {

// Observed dual-record table: counts of individuals captured by both lists,
// by list 1 only, and by list 2 only. The both-missed cell is unobservable
// and deliberately has no field.
struct DrsData {
  long long x11 = 0;
  long long x10 = 0;
  long long x01 = 0;

  long long x0() const { return x11 + x10 + x01; }      // distinct captured
  long long x1dot() const { return x11 + x10; }         // list-1 total
  long long xdot1() const { return x11 + x01; }         // list-2 total
};

// Throws if any count is negative or the table is empty.
void validate(const DrsData& data);

// Recapture-probability MLE x11/x1dot.
double c_hat(const DrsData& data);

// Model parameters: population size, list-1 capture probability, conditional
// list-2 capture probability for first-time captures, and the behavioral
// response multiplier phi (recapture probability c = phi*p).
struct MtbParams {
  long long n = 0;
  double p1dot = 0.0;
  double p = 0.0;
  double phi = 1.0;

  double c() const { return phi * p; }
};

}  // namespace drs
