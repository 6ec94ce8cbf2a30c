#include "optdesign/models.hpp"

#include <cmath>

namespace optdesign {

void LogisticSpec::validate() const {
  space.validate();
  prior.validate();
  if (space.point_dim() != prior.param_dim())
    throw std::invalid_argument(
        "logistic spec: covariate dimension " +
        std::to_string(space.point_dim()) +
        " differs from parameter dimension " +
        std::to_string(prior.param_dim()));
}

InformationAtoms logistic_atoms(const LogisticSpec& spec) {
  spec.validate();
  const int n = spec.space.size();
  const int K = spec.prior.size();
  const int m = spec.prior.param_dim();
  InformationAtoms atoms(n, K, m);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd& x = spec.space.points[i];
    const Eigen::MatrixXd outer = x * x.transpose();
    for (int k = 0; k < K; ++k) {
      const double eta = x.dot(spec.prior.support[k]);
      const double sigma = 1.0 / (1.0 + std::exp(-eta));
      atoms.at(i, k) = sigma * (1.0 - sigma) * outer;
    }
  }
  return atoms;
}

InformationAtoms linear_atoms(const DesignSpace& space) {
  space.validate();
  const int n = space.size();
  const int m = space.point_dim();
  InformationAtoms atoms(n, 1, m);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd& x = space.points[i];
    atoms.at(i, 0) = x * x.transpose();
  }
  return atoms;
}

DesignProblem logistic_grid_benchmark() {
  DesignSpace space;
  space.points.reserve(30);
  for (int i = 1; i <= 30; ++i) {
    Eigen::VectorXd x(2);
    x << 1.0, static_cast<double>(i) / 10.0 - 1.0;
    space.points.push_back(std::move(x));
  }

  DiscretePrior prior;
  prior.support.reserve(25);
  for (int i = -2; i <= 2; ++i) {
    for (int j = -2; j <= 2; ++j) {
      Eigen::VectorXd theta(2);
      theta << static_cast<double>(i), static_cast<double>(j);
      prior.support.push_back(std::move(theta));
      prior.probs.push_back(1.0 / 25.0);
    }
  }

  DesignProblem problem{space, prior, logistic_atoms({space, prior})};
  problem.validate();
  return problem;
}

}  // namespace optdesign
