#ifndef SYSID_OLS_HPP
#define SYSID_OLS_HPP

#include <string>

#include <Eigen/Core>

#include "sysid/simulate.hpp"

namespace sysid {

/// Stacked regression of the windowed input-output relation: column l
/// (l = 0..T-1) pairs the future output window Ytilde^+_{l+d+1,d} with the
/// reversed past input window Utilde^-_{l+d,d}.
struct RegressionBundle {
  Eigen::MatrixXd Yplus;   // (p d) x T
  Eigen::MatrixXd Uminus;  // (m d) x T
  Eigen::MatrixXd V;       // (m d) x (m d) sample covariance Uminus Uminus^T
  Eigen::Index T = 0;
};

RegressionBundle build_regression(const Trajectory& traj, int d);

struct HankelEstimate {
  Eigen::MatrixXd H_hat;   // (p d) x (m d)
  int d = 0;
  Eigen::Index T = 0;      // effective sample count (columns)
  Eigen::Index p = 0, m = 0;
  Eigen::VectorXd sigmas;  // singular values of H_hat, descending
  double vt_min_eig = 0.0;
  double vt_max_eig = 0.0;
  bool pinv_fallback = false;  // V_T left the Lemma-1 window or was singular
};

/// Least-squares Hankel estimate solved through the normal equations:
/// Cholesky when V_T sits inside the Lemma-1 eigenvalue window
/// [T/2, 3T/2] (and ridge = 0), a rank-revealing minimum-norm solve
/// otherwise. ridge adds Tikhonov regularization to V_T.
HankelEstimate estimate_hankel(const Trajectory& traj, int d,
                               double ridge = 0.0);
HankelEstimate estimate_hankel(const RegressionBundle& bundle, Eigen::Index p,
                               Eigen::Index m, int d, double ridge = 0.0);

struct CovarianceReport {
  bool ok = false;  // T/2 <= lambda(V_T) <= 3T/2
  double low = 0.0;   // lambda_min / T
  double high = 0.0;  // lambda_max / T
};

CovarianceReport covariance_condition(const HankelEstimate& est);

std::string estimate_to_json(const HankelEstimate& est);

}  // namespace sysid

#endif  // SYSID_OLS_HPP
