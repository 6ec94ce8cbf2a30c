#include "optdesign/mm_solver.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace optdesign {

void SolverConfig::validate() const {
  if (!(a >= 0.0 && a <= 1.0))
    throw std::invalid_argument("config: a must lie in [0, 1]");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("config: epsilon must be positive");
  if (max_iter < 1)
    throw std::invalid_argument("config: max_iter must be >= 1");
  if (!(monotonicity_slack >= 0.0))
    throw std::invalid_argument("config: monotonicity_slack must be >= 0");
}

double alpha_schedule(const Eigen::VectorXd& d, double a) {
  if (d.size() < 1)
    throw std::invalid_argument("alpha_schedule: empty sensitivity vector");
  return 0.5 * a * d.minCoeff();
}

DesignWeights mm_step(const DesignWeights& w, const Eigen::VectorXd& d,
                      double alpha, int m) {
  if (d.size() != w.size())
    throw std::invalid_argument("mm_step: sensitivity length mismatch");
  const double bound = 0.5 * d.minCoeff();
  if (!(alpha <= bound))
    throw BoundViolated("mm_step: alpha " + std::to_string(alpha) +
                        " exceeds bound " + std::to_string(bound));
  Eigen::VectorXd next =
      w.vec().array() * (d.array() - alpha) / (static_cast<double>(m) - alpha);
  return DesignWeights(std::move(next));
}

bool check_convergence(const Eigen::VectorXd& d, int m, double epsilon) {
  if (d.size() < 1)
    throw std::invalid_argument("check_convergence: empty sensitivity vector");
  return d.maxCoeff() <= static_cast<double>(m) + epsilon;
}

SolveResult solve(const DesignProblem& problem, const DesignWeights& w0,
                  const SolverConfig& config) {
  config.validate();
  if (w0.size() != problem.num_points())
    throw std::invalid_argument("solve: start weights length mismatch");
  if (!w0.interior())
    throw std::invalid_argument(
        "solve: start weights must be strictly interior");

  const int m = problem.param_dim();
  DesignWeights w = w0;
  IterationTrace trace;
  Eigen::VectorXd d;
  double phi = 0.0;
  double prev_phi = -std::numeric_limits<double>::infinity();
  bool have_prev = false;
  long t = 0;

  while (true) {
    criterion_and_sensitivities(problem, w, phi, d);
    if (have_prev && phi < prev_phi - config.monotonicity_slack)
      throw MonotonicityViolated(
          "solve: phi decreased from " + std::to_string(prev_phi) + " to " +
          std::to_string(phi) + " at iteration " + std::to_string(t));
    prev_phi = phi;
    have_prev = true;

    const double alpha = alpha_schedule(d, config.a);
    trace.records.push_back({t, phi, d.minCoeff(), d.maxCoeff(), alpha});
    if (check_convergence(d, m, config.epsilon)) {
      trace.status = SolveStatus::Converged;
      break;
    }
    if (t >= config.max_iter) {
      trace.status = SolveStatus::IterLimit;
      break;
    }
    w = mm_step(w, d, alpha, m);
    ++t;
  }

  SolveResult result{std::move(w), std::move(trace), t, phi,
                     equivalence_gap(d, m)};
  return result;
}

}  // namespace optdesign
