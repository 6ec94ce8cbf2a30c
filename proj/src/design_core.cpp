#include "optdesign/design_core.hpp"

#include <cmath>
#include <limits>

namespace optdesign {

namespace {

constexpr double kSimplexTol = 1e-12;
constexpr double kSymmetryTol = 1e-12;
constexpr double kPsdRelTol = 1e-10;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument(msg);
}

}  // namespace

void DesignSpace::validate() const {
  if (points.empty()) fail("design space: need at least one point");
  const auto p = points.front().size();
  if (p < 1) fail("design space: points must have dimension >= 1");
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != p)
      fail("design space: point " + std::to_string(i) +
           " has inconsistent dimension");
  }
}

void DiscretePrior::validate() const {
  if (support.empty()) fail("prior: need at least one support point");
  if (probs.size() != support.size())
    fail("prior: support and probs lengths differ");
  const auto m = support.front().size();
  for (size_t k = 0; k < support.size(); ++k) {
    if (support[k].size() != m)
      fail("prior: support point " + std::to_string(k) +
           " has inconsistent dimension");
  }
  double sum = 0.0;
  for (size_t k = 0; k < probs.size(); ++k) {
    if (!(probs[k] > 0.0))
      fail("prior: probs[" + std::to_string(k) + "] must be positive");
    sum += probs[k];
  }
  if (std::abs(sum - 1.0) > kSimplexTol)
    fail("prior: probs sum to " + std::to_string(sum) + ", expected 1");
}

InformationAtoms::InformationAtoms(int num_points, int num_support, int dim)
    : n_(num_points), k_(num_support), m_(dim) {
  if (n_ < 1 || k_ < 1 || m_ < 1)
    fail("information atoms: dimensions must be positive");
  data_.assign(static_cast<size_t>(n_) * k_, Eigen::MatrixXd::Zero(m_, m_));
}

Eigen::MatrixXd& InformationAtoms::at(int i, int k) {
  if (i < 0 || i >= n_ || k < 0 || k >= k_)
    throw std::out_of_range("information atoms: index out of range");
  return data_[static_cast<size_t>(i) * k_ + k];
}

const Eigen::MatrixXd& InformationAtoms::at(int i, int k) const {
  if (i < 0 || i >= n_ || k < 0 || k >= k_)
    throw std::out_of_range("information atoms: index out of range");
  return data_[static_cast<size_t>(i) * k_ + k];
}

void InformationAtoms::validate() const {
  if (data_.empty()) fail("information atoms: empty");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < k_; ++k) {
      const Eigen::MatrixXd& a = at(i, k);
      if (a.rows() != m_ || a.cols() != m_)
        fail("atom (" + std::to_string(i) + "," + std::to_string(k) +
             "): wrong shape");
      const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
      if (!(asym <= kSymmetryTol))
        fail("atom (" + std::to_string(i) + "," + std::to_string(k) +
             "): asymmetry " + std::to_string(asym));
      eig.compute(a, Eigen::EigenvaluesOnly);
      const double lo = eig.eigenvalues().minCoeff();
      const double hi = eig.eigenvalues().maxCoeff();
      if (!(lo >= -kPsdRelTol * std::max(hi, 0.0)))
        fail("atom (" + std::to_string(i) + "," + std::to_string(k) +
             "): not positive semidefinite (min eigenvalue " +
             std::to_string(lo) + ")");
    }
  }
}

bool InformationAtoms::operator==(const InformationAtoms& other) const {
  if (n_ != other.n_ || k_ != other.k_ || m_ != other.m_) return false;
  for (size_t i = 0; i < data_.size(); ++i) {
    if (!(data_[i].array() == other.data_[i].array()).all()) return false;
  }
  return true;
}

void DesignProblem::validate() const {
  space.validate();
  prior.validate();
  atoms.validate();
  if (atoms.num_points() != space.size())
    fail("problem: atoms cover " + std::to_string(atoms.num_points()) +
         " design points, space has " + std::to_string(space.size()));
  if (atoms.num_support() != prior.size())
    fail("problem: atoms cover " + std::to_string(atoms.num_support()) +
         " support points, prior has " + std::to_string(prior.size()));
  if (atoms.dim() != prior.param_dim())
    fail("problem: atom dimension " + std::to_string(atoms.dim()) +
         " differs from parameter dimension " +
         std::to_string(prior.param_dim()));
}

DesignWeights::DesignWeights(Eigen::VectorXd w) : w_(std::move(w)) {
  if (w_.size() < 1) fail("weights: need at least one coordinate");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < w_.size(); ++i) {
    if (!(w_[i] >= 0.0))
      fail("weights: w[" + std::to_string(i) + "] = " +
           std::to_string(w_[i]) + " is negative or not a number");
    sum += w_[i];
  }
  if (std::abs(sum - 1.0) > kSimplexTol)
    fail("weights: sum is " + std::to_string(sum) + ", expected 1");
}

DesignWeights DesignWeights::uniform(int n) {
  if (n < 1) fail("weights: need at least one coordinate");
  return DesignWeights(Eigen::VectorXd::Constant(n, 1.0 / n));
}

bool DesignWeights::interior() const { return (w_.array() > 0.0).all(); }

Eigen::MatrixXd assemble_information(const DesignProblem& problem,
                                     const DesignWeights& w, int k) {
  if (k < 0 || k >= problem.num_support())
    throw std::out_of_range("assemble_information: prior index out of range");
  if (w.size() != problem.num_points())
    fail("assemble_information: weight length mismatch");
  const int n = problem.num_points();
  const int m = problem.param_dim();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < n; ++i) M.noalias() += w[i] * problem.atoms.at(i, k);
  return M;
}

namespace {

// 2 sum_j log L_jj from a completed LLT.  Returns false when the
// factorization did not produce strictly positive pivots.
bool log_det_llt(const Eigen::LLT<Eigen::MatrixXd>& llt, double& log_det) {
  if (llt.info() != Eigen::Success) return false;
  double acc = 0.0;
  const auto& L = llt.matrixLLT();
  for (Eigen::Index j = 0; j < L.rows(); ++j) {
    const double pivot = L(j, j);
    if (!(pivot > 0.0) || !std::isfinite(pivot)) return false;
    acc += std::log(pivot);
  }
  log_det = 2.0 * acc;
  return std::isfinite(log_det);
}

}  // namespace

double criterion_phi(const DesignProblem& problem, const DesignWeights& w) {
  const int K = problem.num_support();
  double phi = 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt;
  for (int k = 0; k < K; ++k) {
    llt.compute(assemble_information(problem, w, k));
    double log_det = 0.0;
    if (!log_det_llt(llt, log_det))
      return -std::numeric_limits<double>::infinity();
    phi += problem.prior.probs[k] * log_det;
  }
  return phi;
}

void criterion_and_sensitivities(const DesignProblem& problem,
                                 const DesignWeights& w, double& phi,
                                 Eigen::VectorXd& d) {
  const int n = problem.num_points();
  const int K = problem.num_support();
  const int m = problem.param_dim();
  if (w.size() != n) fail("sensitivities: weight length mismatch");

  phi = 0.0;
  d = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd M(m, m);
  Eigen::MatrixXd X(m, m);
  Eigen::LLT<Eigen::MatrixXd> llt;
  for (int k = 0; k < K; ++k) {
    M.setZero();
    for (int i = 0; i < n; ++i) M.noalias() += w[i] * problem.atoms.at(i, k);
    llt.compute(M);
    double log_det = 0.0;
    if (!log_det_llt(llt, log_det))
      throw SingularInformation("M(w, theta_" + std::to_string(k) +
                                ") is not positive definite");
    const double pi_k = problem.prior.probs[k];
    phi += pi_k * log_det;
    for (int i = 0; i < n; ++i) {
      X = problem.atoms.at(i, k);
      llt.solveInPlace(X);
      d[i] += pi_k * X.trace();
    }
  }
}

Eigen::VectorXd sensitivities_d(const DesignProblem& problem,
                                const DesignWeights& w) {
  double phi = 0.0;
  Eigen::VectorXd d;
  criterion_and_sensitivities(problem, w, phi, d);
  return d;
}

double equivalence_gap(const Eigen::VectorXd& d, int m) {
  if (d.size() < 1) fail("equivalence_gap: empty sensitivity vector");
  return d.maxCoeff() - static_cast<double>(m);
}

}  // namespace optdesign
