#include "sysid/gramians.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "sysid/lyapunov.hpp"

namespace sysid {

namespace {

constexpr double kMinimalityTol = 1e-10;

void require_stable(const StateSpaceModel& model, const char* who) {
  const double rho = model.spectral_radius();
  if (rho >= 1.0)
    throw std::domain_error(std::string(who) + ": model is not Schur stable"
                            " (rho(A) = " + std::to_string(rho) + ")");
}

// Symmetric PSD square root factor X = L L^T via eigendecomposition;
// tolerates semidefinite inputs where Cholesky would fail.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& X) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(X);
  Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * lam.cwiseSqrt().asDiagonal();
}

struct BalancingFactors {
  Eigen::MatrixXd Lp, Lq;  // P = Lp Lp^T, Q = Lq Lq^T
  Eigen::MatrixXd U, V;    // SVD of Lq^T Lp
  Eigen::VectorXd sigma;   // Hankel singular values, descending
  Eigen::Index numerical_rank;
};

BalancingFactors balancing_factors(const StateSpaceModel& model) {
  const GramianPair g = gramians(model);
  BalancingFactors f;
  f.Lp = psd_factor(g.P);
  f.Lq = psd_factor(g.Q);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(f.Lq.transpose() * f.Lp,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  f.U = svd.matrixU();
  f.V = svd.matrixV();
  f.sigma = svd.singularValues();
  f.numerical_rank = 0;
  if (f.sigma.size() > 0) {
    const double tol = kMinimalityTol * f.sigma(0);
    for (Eigen::Index i = 0; i < f.sigma.size(); ++i)
      if (f.sigma(i) > tol) f.numerical_rank = i + 1;
  }
  return f;
}

StateSpaceModel project(const StateSpaceModel& model,
                        const BalancingFactors& f, Eigen::Index r) {
  const Eigen::VectorXd s_inv_sqrt =
      f.sigma.head(r).cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd S_r =
      f.Lp * f.V.leftCols(r) * s_inv_sqrt.asDiagonal();          // n x r
  const Eigen::MatrixXd T_r =
      s_inv_sqrt.asDiagonal() * f.U.leftCols(r).transpose() *
      f.Lq.transpose();                                          // r x n
  return StateSpaceModel(model.C * S_r, T_r * model.A * S_r, T_r * model.B);
}

}  // namespace

GramianPair gramians(const StateSpaceModel& model) {
  require_stable(model, "gramians");
  GramianPair g;
  g.P = solve_discrete_lyapunov(model.A, model.B * model.B.transpose());
  g.Q = solve_discrete_lyapunov(model.A.transpose(),
                                model.C.transpose() * model.C);
  return g;
}

Eigen::VectorXd hankel_singular_values(const StateSpaceModel& model) {
  require_stable(model, "hankel_singular_values");
  return balancing_factors(model).sigma;
}

StateSpaceModel balanced_realization(const StateSpaceModel& model) {
  require_stable(model, "balanced_realization");
  const BalancingFactors f = balancing_factors(model);
  const Eigen::Index n = model.state_dim();
  if (f.numerical_rank < n)
    throw std::domain_error(
        "balanced_realization: model is not minimal (numerical rank " +
        std::to_string(f.numerical_rank) + " < state dimension " +
        std::to_string(n) + ")");
  return project(model, f, n);
}

StateSpaceModel balanced_truncate(const StateSpaceModel& model, int r) {
  if (r < 1) throw std::invalid_argument("balanced_truncate: r must be >= 1");
  require_stable(model, "balanced_truncate");
  const BalancingFactors f = balancing_factors(model);
  const Eigen::Index keep =
      std::min<Eigen::Index>(r, f.numerical_rank);
  if (keep == 0)
    return StateSpaceModel(Eigen::MatrixXd::Zero(model.output_dim(), 0),
                           Eigen::MatrixXd::Zero(0, 0),
                           Eigen::MatrixXd::Zero(0, model.input_dim()));
  return project(model, f, keep);
}

}  // namespace sysid
