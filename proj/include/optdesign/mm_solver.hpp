#pragma once

#include "optdesign/design_core.hpp"

namespace optdesign {

// alpha exceeded the (1/2) min_i d_i step bound; a caller bug, not a data
// condition.
struct BoundViolated : std::logic_error {
  using std::logic_error::logic_error;
};

// phi decreased between iterates by more than the configured slack, which
// contradicts the strict-monotonicity guarantee and signals numerical
// breakdown.
struct MonotonicityViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  double a = 1.0;        // overrelaxation coefficient, in [0, 1]
  double epsilon = 1e-3;  // stopping tolerance: max_i d_i <= m + epsilon
  long max_iter = 100000;
  double monotonicity_slack = 1e-12;

  void validate() const;  // throws std::invalid_argument
};

enum class SolveStatus { Converged, IterLimit };

struct IterationRecord {
  long iter;
  double phi;
  double min_d;
  double max_d;
  double alpha;
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  SolveStatus status = SolveStatus::IterLimit;
};

struct SolveResult {
  DesignWeights weights;
  IterationTrace trace;
  // Number of multiplicative updates applied before the convergence test
  // first passed (the test runs on w^(t) before stepping).
  long iterations = 0;
  double final_phi = 0.0;
  double final_gap = 0.0;
};

// alpha = (a/2) min_i d_i; satisfies the step bound by construction for
// a <= 1.
double alpha_schedule(const Eigen::VectorXd& d, double a);

// w_i <- w_i (d_i - alpha) / (m - alpha).  The updated weights stay on the
// simplex because sum_i w_i (d_i - alpha) = m - alpha; the sum is checked,
// not renormalized, so numerical drift is detected rather than hidden.
// Throws BoundViolated if alpha > (1/2) min_i d_i.
DesignWeights mm_step(const DesignWeights& w, const Eigen::VectorXd& d,
                      double alpha, int m);

// Equivalence-theorem stopping rule: max_i d_i <= m + epsilon.
bool check_convergence(const Eigen::VectorXd& d, int m, double epsilon);

// Multiplicative MM iteration with overrelaxation: repeat
// sensitivities -> alpha schedule -> convergence test -> update, recording
// (t, phi, min d, max d, alpha) each iteration.  w0 must be strictly
// interior.  Throws SingularInformation if some M(w, theta_k) degenerates
// and MonotonicityViolated if phi decreases beyond the slack.
SolveResult solve(const DesignProblem& problem, const DesignWeights& w0,
                  const SolverConfig& config);

}  // namespace optdesign
