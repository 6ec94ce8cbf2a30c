#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace optdesign {

// Thrown when some information matrix M(w, theta_k) fails the positive
// definite factorization where positive definiteness is required.
struct SingularInformation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite design space {x_1, ..., x_n}; each point is a length-p covariate
// vector.
struct DesignSpace {
  std::vector<Eigen::VectorXd> points;

  int size() const { return static_cast<int>(points.size()); }
  int point_dim() const {
    return points.empty() ? 0 : static_cast<int>(points.front().size());
  }
  void validate() const;  // throws std::invalid_argument
};

// Finite-support prior: support points theta_k with probabilities pi_k,
// pi_k > 0, sum_k pi_k = 1.
struct DiscretePrior {
  std::vector<Eigen::VectorXd> support;
  std::vector<double> probs;

  int size() const { return static_cast<int>(support.size()); }
  int param_dim() const {
    return support.empty() ? 0 : static_cast<int>(support.front().size());
  }
  void validate() const;
};

// n x K array of m x m Fisher information atoms A_i(theta_k).  Atoms are
// precomputed once per problem; they are loop-invariant across iterations.
class InformationAtoms {
 public:
  InformationAtoms() = default;
  InformationAtoms(int num_points, int num_support, int dim);

  Eigen::MatrixXd& at(int i, int k);
  const Eigen::MatrixXd& at(int i, int k) const;

  int num_points() const { return n_; }
  int num_support() const { return k_; }
  int dim() const { return m_; }

  // Symmetry within 1e-12 (max absolute asymmetry) and positive
  // semidefiniteness (min eigenvalue >= -1e-10 * max eigenvalue).
  void validate() const;

  bool operator==(const InformationAtoms& other) const;

 private:
  int n_ = 0;
  int k_ = 0;
  int m_ = 0;
  std::vector<Eigen::MatrixXd> data_;
};

// Problem data: design space, prior, and the precomputed atoms.
struct DesignProblem {
  DesignSpace space;
  DiscretePrior prior;
  InformationAtoms atoms;

  int num_points() const { return space.size(); }
  int num_support() const { return prior.size(); }
  int param_dim() const { return atoms.dim(); }
  void validate() const;
};

// A point on the n-simplex: w_i >= 0 and sum_i w_i = 1 within 1e-12.
class DesignWeights {
 public:
  explicit DesignWeights(Eigen::VectorXd w);  // throws std::invalid_argument
  static DesignWeights uniform(int n);

  const Eigen::VectorXd& vec() const { return w_; }
  double operator[](int i) const { return w_[i]; }
  int size() const { return static_cast<int>(w_.size()); }
  bool interior() const;  // all coordinates strictly positive

 private:
  Eigen::VectorXd w_;
};

// M(w, theta_k) = sum_i w_i A_i(theta_k), accumulated in ascending i.
Eigen::MatrixXd assemble_information(const DesignProblem& problem,
                                     const DesignWeights& w, int k);

// phi(w) = sum_k pi_k log det M(w, theta_k), log-determinants from a
// Cholesky factorization.  Returns -infinity when some M(w, theta_k) is not
// numerically positive definite.
double criterion_phi(const DesignProblem& problem, const DesignWeights& w);

// d_i(w) = sum_k pi_k tr(M(w, theta_k)^{-1} A_i(theta_k)).  M is factorized
// once per k and each trace comes from m triangular solves; no explicit
// inverse is formed.  Throws SingularInformation if some M is not positive
// definite.
Eigen::VectorXd sensitivities_d(const DesignProblem& problem,
                                const DesignWeights& w);

// phi and d from a single factorization pass.  Results are bit-identical to
// criterion_phi / sensitivities_d; the solver calls this once per iteration.
void criterion_and_sensitivities(const DesignProblem& problem,
                                 const DesignWeights& w, double& phi,
                                 Eigen::VectorXd& d);

// max_i d_i - m.  Zero exactly at a maximizer of phi (general equivalence
// theorem); nonnegative at any interior w since sum_i w_i d_i = m.
double equivalence_gap(const Eigen::VectorXd& d, int m);

}  // namespace optdesign
