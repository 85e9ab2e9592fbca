#pragma once

namespace drs {

// Generating description of a population: true size, list-1 capture
// probability, unconditional list-2 capture probability, and the behavioral
// response multiplier.
struct PopulationSpec {
  long long n_true = 0;
  double p1dot = 0.0;
  double pdot1 = 0.0;
  double phi = 1.0;
};

// Multinomial cell probabilities of the 2x2 capture table.
struct CellProbabilities {
  double p11 = 0.0;
  double p10 = 0.0;
  double p01 = 0.0;
  double p00 = 0.0;

  // conditional list-2 capture probability induced by the population
  double p = 0.0;
};

// Maps a PopulationSpec to cell probabilities via
// p = pdot1 / (1 - p1dot + phi*p1dot), then
// p11 = p1dot*phi*p, p10 = p1dot*(1-phi*p), p01 = (1-p1dot)*p,
// p00 = (1-p1dot)*(1-p). Throws InfeasibleSpecError when the induced p
// falls outside (0,1) or phi*p >= 1.
CellProbabilities cell_probabilities(const PopulationSpec& spec);

// n_true * (1 - p00): expected number of distinct captured individuals.
double expected_x0(const PopulationSpec& spec);

}  // namespace drs
