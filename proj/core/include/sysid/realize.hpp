#ifndef SYSID_REALIZE_HPP
#define SYSID_REALIZE_HPP

#include <string>

#include <Eigen/Core>

#include "sysid/ols.hpp"
#include "sysid/state_space.hpp"

namespace sysid {

struct RealizedModel {
  StateSpaceModel model;       // (C_k, A_k, B_k), order k
  Eigen::VectorXd sigmas_used; // top-k singular values entering the factors
  int k = 0;
  int source_d = 0;            // window size of the estimate
};

/// Ho-Kalman step on an estimated Hankel matrix: SVD, one zero block-row of
/// padding so the row shift is defined on the last block, and
/// A_k = (Z0^T Z0)^{-1} Z0^T Z1 = Sigma_k^{-1/2} U_k^T [U_k Sigma_k^{1/2}]
/// shifted down by p rows. Singular-vector signs are normalized so the
/// largest-magnitude entry of each left vector is positive.
RealizedModel hankel2sys(const HankelEstimate& est, int k);
RealizedModel hankel2sys(const Eigen::MatrixXd& H, Eigen::Index p,
                         Eigen::Index m, int k, int source_d);

struct ModelDistance {
  double hankel_err = 0.0;   // padded spectral gap of H_{0,D,D}
  double hinf_err = 0.0;     // grid H-infinity norm of the difference
  double impulse_err = 0.0;  // max Markov-parameter deviation over horizon
};

/// Distance between two systems with matching input/output dimensions,
/// evaluated at truncation horizon D = `horizon` blocks and `grid` frequency
/// points.
ModelDistance compare_models(const StateSpaceModel& a, const StateSpaceModel& b,
                             int horizon, int grid);

/// Parameter error after gauging away the orthogonal freedom shared by
/// balanced factors: an orthogonal Q fitted by Procrustes on the stacked
/// observability factors, then
/// ||C - C_hat Q|| + ||A - Q^T A_hat Q|| + ||B - Q^T B_hat||.
double aligned_param_error(const StateSpaceModel& truth,
                           const StateSpaceModel& estimate);

std::string realized_to_json(const RealizedModel& rm);

}  // namespace sysid

#endif  // SYSID_REALIZE_HPP
