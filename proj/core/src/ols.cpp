#include "sysid/ols.hpp"

#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <json.hpp>

namespace sysid {

RegressionBundle build_regression(const Trajectory& traj, int d) {
  if (d < 1) throw std::invalid_argument("build_regression: d must be >= 1");
  const Eigen::Index L = traj.length();
  if (L < 2 * d + 1)
    throw std::invalid_argument(
        "build_regression: trajectory too short for d = " + std::to_string(d) +
        " (need at least " + std::to_string(2 * d + 1) + " samples)");
  const Eigen::Index m = traj.input_dim();
  const Eigen::Index p = traj.output_dim();
  const Eigen::Index T = L - 2 * d;

  RegressionBundle b;
  b.T = T;
  b.Yplus.resize(p * d, T);
  b.Uminus.resize(m * d, T);
  // 1-based time t maps to row t-1. Column l:
  //   Yplus  = [Y_{l+d+1}; ...; Y_{l+2d}]   (increasing time)
  //   Uminus = [U_{l+d};   ...; U_{l+1}]    (decreasing time)
  for (Eigen::Index l = 0; l < T; ++l) {
    for (int i = 0; i < d; ++i) {
      b.Yplus.col(l).segment(i * p, p) = traj.Y.row(l + d + i).transpose();
      b.Uminus.col(l).segment(i * m, m) = traj.U.row(l + d - 1 - i).transpose();
    }
  }
  b.V.noalias() = b.Uminus * b.Uminus.transpose();
  return b;
}

HankelEstimate estimate_hankel(const RegressionBundle& bundle, Eigen::Index p,
                               Eigen::Index m, int d, double ridge) {
  if (ridge < 0.0) throw std::invalid_argument("estimate_hankel: ridge >= 0");
  HankelEstimate est;
  est.d = d;
  est.T = bundle.T;
  est.p = p;
  est.m = m;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(bundle.V,
                                                     Eigen::EigenvaluesOnly);
  est.vt_min_eig = eig.eigenvalues().minCoeff();
  est.vt_max_eig = eig.eigenvalues().maxCoeff();

  const Eigen::MatrixXd numerator =
      bundle.Yplus * bundle.Uminus.transpose();  // (pd) x (md)
  const double T = static_cast<double>(bundle.T);
  const bool lemma_window =
      est.vt_min_eig >= T / 2.0 && est.vt_max_eig <= 1.5 * T;

  if (ridge > 0.0) {
    Eigen::MatrixXd Vr = bundle.V;
    Vr.diagonal().array() += ridge;
    est.H_hat = Vr.llt().solve(numerator.transpose()).transpose();
  } else if (lemma_window) {
    est.H_hat = bundle.V.llt().solve(numerator.transpose()).transpose();
  } else {
    // minimum-norm least squares; covers rank-deficient V_T
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(bundle.V);
    est.H_hat = cod.solve(numerator.transpose()).transpose();
    est.pinv_fallback = true;
  }
  est.sigmas = Eigen::BDCSVD<Eigen::MatrixXd>(est.H_hat).singularValues();
  return est;
}

HankelEstimate estimate_hankel(const Trajectory& traj, int d, double ridge) {
  const RegressionBundle bundle = build_regression(traj, d);
  return estimate_hankel(bundle, traj.output_dim(), traj.input_dim(), d,
                         ridge);
}

CovarianceReport covariance_condition(const HankelEstimate& est) {
  CovarianceReport r;
  const double T = static_cast<double>(est.T);
  r.low = est.vt_min_eig / T;
  r.high = est.vt_max_eig / T;
  r.ok = est.vt_min_eig >= T / 2.0 && est.vt_max_eig <= 1.5 * T;
  return r;
}

std::string estimate_to_json(const HankelEstimate& est) {
  nlohmann::json j;
  j["d"] = est.d;
  j["T"] = est.T;
  j["p"] = est.p;
  j["m"] = est.m;
  j["vt_min_eig"] = est.vt_min_eig;
  j["vt_max_eig"] = est.vt_max_eig;
  j["pinv_fallback"] = est.pinv_fallback;
  j["sigmas"] = std::vector<double>(est.sigmas.data(),
                                    est.sigmas.data() + est.sigmas.size());
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < est.H_hat.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < est.H_hat.cols(); ++c)
      row.push_back(est.H_hat(i, c));
    rows.push_back(std::move(row));
  }
  j["H"] = std::move(rows);
  return j.dump(2);
}

}  // namespace sysid
