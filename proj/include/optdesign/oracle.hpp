#pragma once

#include "optdesign/design_core.hpp"

// Independent verification machinery: a determinant-polynomial expansion,
// the MM minorizer, brute-force simplex search, and finite-difference
// gradients.  Used by tests and audits only; the solver never calls into
// this module.
namespace optdesign::oracle {

struct TooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// det M(w) written out as a polynomial in w with nonnegative coefficients.
// Every exponent vector sums to m (det M is homogeneous of degree m).
struct DetPolynomial {
  struct Term {
    double coef;
    std::vector<int> exps;  // length n, entries >= 0, sum == m
  };

  int n = 0;
  int m = 0;
  std::vector<Term> terms;

  double eval(const Eigen::VectorXd& w) const;
};

// Cauchy-Binet expansion of det(sum_i w_i A_i) over the m-column minors of
// G = (A_1^{1/2}, ..., A_n^{1/2}); matrix square roots are the symmetric PSD
// roots from an eigendecomposition, minors are direct m x m determinant
// expansions.  Enumerates C(mn, m) column subsets; throws TooLarge unless
// m <= 3 and m*n <= 24.
DetPolynomial det_poly_cauchy_binet(const std::vector<Eigen::MatrixXd>& atoms);

// Minorizer of phi at w_tilde:
//   Q(w; wt) = sum_i d_i(wt) wt_i log(w_i / wt_i) + phi(wt).
// Satisfies Q(w; wt) <= phi(w) with equality at w = wt.
double minorizer_q(const DesignProblem& problem, const DesignWeights& w,
                   const DesignWeights& w_tilde);

// Exhaustive reference maximizer over the grid {w : w_i = j_i / resolution},
// skipping points where phi = -infinity.  The enumeration is over integer
// compositions, so the result is deterministic.  Throws TooLarge when the
// composition count is out of budget and Infeasible when every grid point is
// singular.
DesignWeights grid_search_maximizer(const DesignProblem& problem,
                                    int resolution);

// Central differences (phi(w + h e_i) - phi(w - h e_i)) / (2h) of the
// degree-m homogeneous extension of phi to unnormalized nonnegative weights;
// the probes never renormalize.  Agrees with sensitivities_d on
// well-conditioned instances.  Requires w_i > h for every i.
Eigen::VectorXd finite_difference_gradient(const DesignProblem& problem,
                                           const DesignWeights& w, double h);

// phi on an unnormalized nonnegative weight vector, log-determinants summed
// from eigenvalues only.  A route independent of the Cholesky-based
// criterion_phi, for cross-checks.  Returns -infinity when some M(v, theta_k)
// has a nonpositive eigenvalue.
double criterion_phi_eig(const DesignProblem& problem,
                         const Eigen::VectorXd& v);

}  // namespace optdesign::oracle
