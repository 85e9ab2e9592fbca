#include "drs/cells.hpp"

#include <string>

#include "drs/errors.hpp"

namespace drs {

CellProbabilities cell_probabilities(const PopulationSpec& spec) {
  if (spec.n_true < 1) {
    throw InfeasibleSpecError("population spec needs n_true >= 1, got " +
                              std::to_string(spec.n_true));
  }
  if (!(spec.p1dot > 0.0 && spec.p1dot < 1.0) ||
      !(spec.pdot1 > 0.0 && spec.pdot1 < 1.0) || !(spec.phi > 0.0)) {
    throw InfeasibleSpecError(
        "population spec needs p1dot, pdot1 in (0,1) and phi > 0");
  }
  const double p = spec.pdot1 / (1.0 - spec.p1dot + spec.phi * spec.p1dot);
  if (!(p > 0.0 && p < 1.0)) {
    throw InfeasibleSpecError("induced p = " + std::to_string(p) +
                              " lies outside (0,1)");
  }
  const double c = spec.phi * p;
  if (c >= 1.0) {
    throw InfeasibleSpecError("induced phi*p = " + std::to_string(c) +
                              " is >= 1");
  }
  CellProbabilities cells;
  cells.p = p;
  cells.p11 = spec.p1dot * c;
  cells.p10 = spec.p1dot * (1.0 - c);
  cells.p01 = (1.0 - spec.p1dot) * p;
  cells.p00 = (1.0 - spec.p1dot) * (1.0 - p);
  return cells;
}

double expected_x0(const PopulationSpec& spec) {
  const CellProbabilities cells = cell_probabilities(spec);
  return static_cast<double>(spec.n_true) * (1.0 - cells.p00);
}

}  // namespace drs
