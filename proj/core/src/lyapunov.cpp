#include "sysid/lyapunov.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace sysid {

Eigen::MatrixXd solve_discrete_lyapunov(const Eigen::MatrixXd& A,
                                        const Eigen::MatrixXd& Q) {
  if (A.rows() != A.cols()) throw std::invalid_argument("lyapunov: A not square");
  if (Q.rows() != A.rows() || Q.cols() != A.cols())
    throw std::invalid_argument("lyapunov: Q dimension mismatch");
  {
    Eigen::EigenSolver<Eigen::MatrixXd> eig(A, false);
    const double rho = eig.eigenvalues().cwiseAbs().maxCoeff();
    if (rho >= 1.0)
      throw std::domain_error(
          "solve_discrete_lyapunov: rho(A) = " + std::to_string(rho) +
          " >= 1, series diverges");
  }

  Eigen::MatrixXd X = Q;
  Eigen::MatrixXd Ak = A;
  // X_j = sum_{k < 2^j} A^k Q A'^k; doubling squares the horizon each step
  for (int iter = 0; iter < 128; ++iter) {
    Eigen::MatrixXd update = Ak * X * Ak.transpose();
    X += update;
    if (update.norm() < 1e-14 * X.norm()) break;
    Ak = Ak * Ak;
  }
  // enforce exact symmetry lost to roundoff
  X = 0.5 * (X + X.transpose()).eval();
  return X;
}

}  // namespace sysid
