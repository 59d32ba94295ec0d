#include "sysid/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace sysid {

namespace {

// Solve (z I - H) X = RHS for upper-Hessenberg H, O(n^2) per right-hand side.
Eigen::MatrixXcd hessenberg_solve(const Eigen::MatrixXcd& H,
                                  std::complex<double> z,
                                  Eigen::MatrixXcd RHS) {
  const Eigen::Index n = H.rows();
  Eigen::MatrixXcd U = -H;
  U.diagonal().array() += z;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (std::abs(U(k + 1, k)) > std::abs(U(k, k))) {
      U.row(k).tail(n - k).swap(U.row(k + 1).tail(n - k));
      RHS.row(k).swap(RHS.row(k + 1));
    }
    if (U(k, k) == std::complex<double>(0.0)) continue;
    const std::complex<double> mult = U(k + 1, k) / U(k, k);
    U.row(k + 1).tail(n - k) -= mult * U.row(k).tail(n - k);
    RHS.row(k + 1) -= mult * RHS.row(k);
  }
  // back substitution
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    for (Eigen::Index j = i + 1; j < n; ++j) RHS.row(i) -= U(i, j) * RHS.row(j);
    RHS.row(i) /= U(i, i);
  }
  return RHS;
}

// sigma_max of the strictly-lower block-Toeplitz section with kernel blocks
// kern[0], kern[1], ... on successive sub-diagonals (h x h block grid).
// Lanczos on the small Gram operator T T^T; matvecs use the Toeplitz
// structure, nothing is assembled.
double toeplitz_section_norm(const std::vector<Eigen::MatrixXd>& kern, int h) {
  if (h < 1) throw std::invalid_argument("toeplitz_section_norm: h >= 1");
  if (kern.empty()) return 0.0;
  const Eigen::Index p = kern.front().rows();
  const Eigen::Index w = kern.front().cols();
  const int support = static_cast<int>(kern.size());
  const Eigen::Index rows = p * h;

  const auto apply_t = [&](const Eigen::VectorXd& v) {
    // y_i = sum_{j<i} kern[i-j-1] v_j
    Eigen::VectorXd y = Eigen::VectorXd::Zero(rows);
    for (int i = 1; i < h; ++i) {
      const int jmin = std::max(0, i - support);
      for (int j = jmin; j < i; ++j)
        y.segment(i * p, p).noalias() +=
            kern[i - j - 1] * v.segment(j * w, w);
    }
    return y;
  };
  const auto apply_tt = [&](const Eigen::VectorXd& u) {
    // z_j = sum_{i>j} kern[i-j-1]^T u_i
    Eigen::VectorXd z = Eigen::VectorXd::Zero(w * h);
    for (int j = 0; j + 1 < h; ++j) {
      const int imax = std::min(h, j + 1 + support);
      for (int i = j + 1; i < imax; ++i)
        z.segment(j * w, w).noalias() +=
            kern[i - j - 1].transpose() * u.segment(i * p, p);
    }
    return z;
  };

  const int max_steps = static_cast<int>(std::min<Eigen::Index>(rows, 200));
  std::vector<Eigen::VectorXd> basis;
  basis.reserve(max_steps);
  Eigen::VectorXd q = Eigen::VectorXd::Ones(rows);
  for (Eigen::Index i = 0; i < rows; ++i) q[i] += 1e-3 * std::sin(1.0 + i);
  q.normalize();
  std::vector<double> diag, off;
  double prev = 0.0, beta_l = 0.0;
  Eigen::VectorXd q_prev = Eigen::VectorXd::Zero(rows);
  for (int step = 0; step < max_steps; ++step) {
    basis.push_back(q);
    Eigen::VectorXd r = apply_t(apply_tt(q));
    const double a = q.dot(r);
    diag.push_back(a);
    r -= a * q + beta_l * q_prev;
    for (const auto& b : basis) r -= b.dot(r) * b;  // full reorth
    beta_l = r.norm();
    // largest eigenvalue of the current tridiagonal
    Eigen::MatrixXd Tk = Eigen::MatrixXd::Zero(step + 1, step + 1);
    for (int i = 0; i <= step; ++i) Tk(i, i) = diag[i];
    for (int i = 0; i + 1 <= step; ++i) Tk(i, i + 1) = Tk(i + 1, i) = off[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Tk);
    const double lam = eig.eigenvalues().maxCoeff();
    if (step > 8 && std::abs(lam - prev) <= 1e-13 * std::max(lam, 1.0)) {
      prev = lam;
      break;
    }
    prev = lam;
    if (beta_l < 1e-14) break;
    off.push_back(beta_l);
    q_prev = basis.back();
    q = r / beta_l;
  }
  return std::sqrt(std::max(prev, 0.0));
}

}  // namespace

FrequencyResponse::FrequencyResponse(const StateSpaceModel& model) {
  Eigen::HessenbergDecomposition<Eigen::MatrixXd> hess(model.A);
  const Eigen::MatrixXd Q = hess.matrixQ();
  H_ = hess.matrixH().cast<std::complex<double>>();
  CQ_ = (model.C * Q).cast<std::complex<double>>();
  QtB_ = (Q.transpose() * model.B).cast<std::complex<double>>();
}

Eigen::MatrixXcd FrequencyResponse::at(double omega) const {
  const std::complex<double> z = std::polar(1.0, omega);
  return CQ_ * hessenberg_solve(H_, z, QtB_);
}

double FrequencyResponse::max_gain(double omega) const {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(at(omega)).singularValues()(0);
}

double hinf_norm(const StateSpaceModel& model, int grid_points) {
  if (grid_points < 64)
    throw std::invalid_argument("hinf_norm: grid_points must be >= 64");
  const double rho = model.spectral_radius();
  if (rho >= 1.0)
    throw std::domain_error("hinf_norm: model is not Schur stable (rho(A) = " +
                            std::to_string(rho) + ")");
  if (model.state_dim() == 0) return 0.0;
  FrequencyResponse fr(model);

  double best = -1.0;
  int best_i = 0;
  const double step = 2.0 * M_PI / grid_points;
  for (int i = 0; i < grid_points; ++i) {
    const double g = fr.max_gain(i * step);
    if (g > best) {
      best = g;
      best_i = i;
    }
  }
  // golden-section refinement on the bracket around the grid argmax
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = (best_i - 1) * step, b = (best_i + 1) * step;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = fr.max_gain(x1), f2 = fr.max_gain(x2);
  for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = fr.max_gain(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = fr.max_gain(x1);
    }
  }
  return std::max(best, std::max(f1, f2));
}

double delta_plus(const Eigen::VectorXd& sigmas, double floor) {
  if (sigmas.size() == 0)
    throw std::invalid_argument("delta_plus: empty sequence");
  if (floor < 0.0) throw std::invalid_argument("delta_plus: negative floor");
  std::vector<double> v(sigmas.size() + 1, 0.0);
  for (Eigen::Index i = 0; i < sigmas.size(); ++i) {
    if (i > 0 && sigmas(i) > sigmas(i - 1) + 1e-12 * std::abs(sigmas(i - 1)))
      throw std::invalid_argument("delta_plus: sequence not descending");
    v[i] = sigmas(i) < floor ? 0.0 : sigmas(i);
  }
  double gap = 1.0;  // vacuous infimum: every kept value equally recoverable
  bool any = false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] == v[i + 1] || v[i] <= 0.0) continue;
    const double g = 1.0 - v[i + 1] / v[i];
    gap = any ? std::min(gap, g) : g;
    any = true;
  }
  return gap;
}

NoiseToSignal noise_to_signal(const StateSpaceModel& model, int horizon) {
  if (horizon < 1)
    throw std::invalid_argument("noise_to_signal: horizon must be >= 1");
  const double rho = model.spectral_radius();
  if (rho >= 1.0)
    throw std::domain_error("noise_to_signal: model is not Schur stable");

  std::vector<Eigen::MatrixXd> input_kern, noise_kern;
  Eigen::MatrixXd X = Eigen::MatrixXd::Identity(model.state_dim(),
                                                model.state_dim());
  const int support = std::max(1, horizon - 1);
  for (int k = 0; k < support; ++k) {
    input_kern.push_back(model.C * X * model.B);
    noise_kern.push_back(model.C * X);
    X = model.A * X;
    if (X.norm() < 1e-300) break;  // nilpotent: kernel support exhausted
  }
  NoiseToSignal out;
  out.beta = toeplitz_section_norm(input_kern, horizon);
  const double noise_norm = toeplitz_section_norm(noise_kern, horizon);
  out.R = out.beta > 0.0 ? noise_norm / out.beta
                         : std::numeric_limits<double>::infinity();
  return out;
}

int decay_horizon(const StateSpaceModel& model, double tol) {
  const double rho = model.spectral_radius();
  if (rho >= 1.0)
    throw std::domain_error("decay_horizon: model is not Schur stable");
  const Eigen::Index n = model.state_dim();
  if (rho < 1e-12) return static_cast<int>(n) + 1;  // nilpotent

  const int probe = static_cast<int>(std::min<Eigen::Index>(2 * n + 20, 400));
  const auto markov = markov_parameters(model, probe);
  double m_tilde = 0.0;
  double rho_k = 1.0;
  for (int k = 0; k < probe; ++k) {
    const double nk = markov[k].norm();
    if (rho_k > 1e-280) m_tilde = std::max(m_tilde, nk / rho_k);
    rho_k *= rho;
  }
  if (m_tilde <= 0.0) return 1;
  const double d = (std::log(m_tilde) - std::log(tol * (1.0 - rho))) /
                   std::log(1.0 / rho);
  return std::max(1, std::min(20000, static_cast<int>(std::ceil(d))));
}

}  // namespace sysid
