#ifndef SYSID_LYAPUNOV_HPP
#define SYSID_LYAPUNOV_HPP

#include <Eigen/Core>

namespace sysid {

/// Solves the discrete Lyapunov equation X = A X A^T + Q (Q symmetric PSD)
/// by the squaring/doubling iteration X <- X + A X A^T, A <- A^2, run until
/// the update norm drops below 1e-14 of the accumulated solution.
/// Throws std::domain_error when rho(A) >= 1 (the defining series diverges).
Eigen::MatrixXd solve_discrete_lyapunov(const Eigen::MatrixXd& A,
                                        const Eigen::MatrixXd& Q);

}  // namespace sysid

#endif  // SYSID_LYAPUNOV_HPP
