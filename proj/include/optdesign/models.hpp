#pragma once

#include "optdesign/design_core.hpp"

namespace optdesign {

// Logistic regression Pr(y=1 | x, theta) = 1 / (1 + exp(-x' theta)).
// Covariate and parameter dimensions coincide (eta_i = x_i' theta).
struct LogisticSpec {
  DesignSpace space;
  DiscretePrior prior;

  void validate() const;
};

// A_i(theta_k) = x_i x_i' * sigma(eta)(1 - sigma(eta)) with
// eta = x_i' theta_k, evaluated through the sigmoid so the weight stays
// finite for large |eta|.
InformationAtoms logistic_atoms(const LogisticSpec& spec);

// Point-mass-prior specialization (locally D-optimal): K = 1 and
// A_i = x_i x_i'.
InformationAtoms linear_atoms(const DesignSpace& space);

// Built-in benchmark: logistic model on the 30-point grid
// x_i = (1, i/10 - 1), i = 1..30, with a uniform prior on the 5x5 grid
// {(i, j) : i, j = -2..2} (probability 1/25 each).  n=30, K=25, m=2.
DesignProblem logistic_grid_benchmark();

}  // namespace optdesign
