#include "optdesign/oracle.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <utility>

namespace optdesign::oracle {

namespace {

// Symmetric PSD square root via eigendecomposition; negative eigenvalues
// from roundoff are clamped to zero.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  Eigen::VectorXd lambda = eig.eigenvalues();
  for (Eigen::Index j = 0; j < lambda.size(); ++j)
    lambda[j] = std::sqrt(std::max(lambda[j], 0.0));
  return eig.eigenvectors() * lambda.asDiagonal() *
         eig.eigenvectors().transpose();
}

// Direct determinant expansion, m <= 3.
double det_direct(const Eigen::MatrixXd& a) {
  switch (a.rows()) {
    case 1:
      return a(0, 0);
    case 2:
      return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    case 3:
      return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
             a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
             a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    default:
      throw TooLarge("det_direct: only m <= 3 supported");
  }
}

}  // namespace

double DetPolynomial::eval(const Eigen::VectorXd& w) const {
  if (w.size() != n)
    throw std::invalid_argument("det polynomial: weight length mismatch");
  double value = 0.0;
  for (const Term& term : terms) {
    double monomial = term.coef;
    for (int i = 0; i < n; ++i) {
      for (int e = 0; e < term.exps[i]; ++e) monomial *= w[i];
    }
    value += monomial;
  }
  return value;
}

DetPolynomial det_poly_cauchy_binet(
    const std::vector<Eigen::MatrixXd>& atoms) {
  const int n = static_cast<int>(atoms.size());
  if (n < 1)
    throw std::invalid_argument("cauchy-binet: need at least one atom");
  const int m = static_cast<int>(atoms.front().rows());
  for (const Eigen::MatrixXd& a : atoms) {
    if (a.rows() != m || a.cols() != m)
      throw std::invalid_argument("cauchy-binet: atoms must share one shape");
  }
  if (m > 3 || m * n > 24)
    throw TooLarge("cauchy-binet: instance exceeds enumeration limits (m <= "
                   "3, m*n <= 24)");

  // G = (A_1^{1/2}, ..., A_n^{1/2}), m x (mn); column c belongs to design
  // point c / m.
  Eigen::MatrixXd g(m, m * n);
  for (int i = 0; i < n; ++i)
    g.block(0, i * m, m, m) = psd_sqrt(atoms[static_cast<size_t>(i)]);

  // det M(w) = sum over m-column subsets of det^2(G_sub) * prod w_j^(count),
  // merged by exponent signature.
  std::map<std::vector<int>, double> coeffs;
  std::vector<int> cols(m);
  for (int j = 0; j < m; ++j) cols[j] = j;
  Eigen::MatrixXd sub(m, m);
  while (true) {
    for (int j = 0; j < m; ++j) sub.col(j) = g.col(cols[j]);
    const double minor = det_direct(sub);
    std::vector<int> exps(n, 0);
    for (int j = 0; j < m; ++j) exps[cols[j] / m] += 1;
    coeffs[exps] += minor * minor;

    // next combination in lexicographic order
    int j = m - 1;
    while (j >= 0 && cols[j] == m * n - m + j) --j;
    if (j < 0) break;
    ++cols[j];
    for (int l = j + 1; l < m; ++l) cols[l] = cols[l - 1] + 1;
  }

  DetPolynomial poly;
  poly.n = n;
  poly.m = m;
  poly.terms.reserve(coeffs.size());
  for (const auto& [exps, coef] : coeffs)
    poly.terms.push_back({coef, exps});
  return poly;
}

double minorizer_q(const DesignProblem& problem, const DesignWeights& w,
                   const DesignWeights& w_tilde) {
  if (w.size() != problem.num_points() ||
      w_tilde.size() != problem.num_points())
    throw std::invalid_argument("minorizer: weight length mismatch");
  const Eigen::VectorXd d = sensitivities_d(problem, w_tilde);
  const double phi_tilde = criterion_phi(problem, w_tilde);
  double q = phi_tilde;
  for (int i = 0; i < problem.num_points(); ++i) {
    if (w_tilde[i] == 0.0) continue;  // 0 log(w/0) contributes nothing
    q += d[i] * w_tilde[i] * std::log(w[i] / w_tilde[i]);
  }
  return q;
}

DesignWeights grid_search_maximizer(const DesignProblem& problem,
                                    int resolution) {
  const int n = problem.num_points();
  if (resolution < 1)
    throw std::invalid_argument("grid search: resolution must be >= 1");
  if (n > 4 || resolution > 1000)
    throw TooLarge("grid search: instance exceeds enumeration limits");
  double count = 1.0;  // C(resolution + n - 1, n - 1)
  for (int j = 1; j <= n - 1; ++j)
    count = count * (resolution + j) / j;
  if (count > 500000.0)
    throw TooLarge("grid search: too many grid points to enumerate");

  double best_phi = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd best;
  std::vector<int> parts(n, 0);
  parts[0] = resolution;
  Eigen::VectorXd w(n);
  while (true) {
    for (int i = 0; i < n; ++i)
      w[i] = static_cast<double>(parts[i]) / resolution;
    const double phi = criterion_phi_eig(problem, w);
    if (phi > best_phi) {
      best_phi = phi;
      best = w;
    }

    // next composition of `resolution` into n nonnegative parts
    int j = n - 2;
    while (j >= 0 && parts[j] == 0) --j;
    if (j < 0) break;
    --parts[j];
    const int tail = parts[n - 1] + 1;
    parts[n - 1] = 0;
    parts[j + 1] = tail;
  }

  if (!std::isfinite(best_phi))
    throw Infeasible("grid search: every grid point is singular");
  return DesignWeights(std::move(best));
}

Eigen::VectorXd finite_difference_gradient(const DesignProblem& problem,
                                           const DesignWeights& w, double h) {
  const int n = problem.num_points();
  if (!(h > 0.0))
    throw std::invalid_argument("finite differences: h must be positive");
  for (int i = 0; i < n; ++i) {
    if (!(w[i] > h))
      throw std::invalid_argument(
          "finite differences: weights must be interior with margin > h");
  }
  Eigen::VectorXd grad(n);
  Eigen::VectorXd probe = w.vec();
  for (int i = 0; i < n; ++i) {
    const double wi = probe[i];
    probe[i] = wi + h;
    const double up = criterion_phi_eig(problem, probe);
    probe[i] = wi - h;
    const double down = criterion_phi_eig(problem, probe);
    probe[i] = wi;
    if (!std::isfinite(up) || !std::isfinite(down))
      throw SingularInformation(
          "finite differences: singular information matrix at probe " +
          std::to_string(i));
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

double criterion_phi_eig(const DesignProblem& problem,
                         const Eigen::VectorXd& v) {
  const int n = problem.num_points();
  const int K = problem.num_support();
  const int m = problem.param_dim();
  if (v.size() != n)
    throw std::invalid_argument("criterion_phi_eig: weight length mismatch");
  double phi = 0.0;
  Eigen::MatrixXd M(m, m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  for (int k = 0; k < K; ++k) {
    M.setZero();
    for (int i = 0; i < n; ++i) M.noalias() += v[i] * problem.atoms.at(i, k);
    eig.compute(M, Eigen::EigenvaluesOnly);
    double log_det = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      const double lambda = eig.eigenvalues()[j];
      if (!(lambda > 0.0))
        return -std::numeric_limits<double>::infinity();
      log_det += std::log(lambda);
    }
    phi += problem.prior.probs[k] * log_det;
  }
  return phi;
}

}  // namespace optdesign::oracle
