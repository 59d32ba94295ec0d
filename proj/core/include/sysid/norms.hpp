#ifndef SYSID_NORMS_HPP
#define SYSID_NORMS_HPP

#include <Eigen/Core>

#include "sysid/state_space.hpp"

namespace sysid {

/// H-infinity norm: sup over omega of sigma_max(G(e^{j omega})), evaluated on
/// a uniform grid over [0, 2pi) followed by golden-section refinement around
/// the grid argmax. Converges to the supremum from below.
/// Requires a Schur-stable model and grid_points >= 64.
double hinf_norm(const StateSpaceModel& model, int grid_points = 4096);

/// Frequency response evaluator with the Hessenberg form of A precomputed,
/// so each G(e^{j omega}) costs O(n^2). Valid for any A.
class FrequencyResponse {
 public:
  explicit FrequencyResponse(const StateSpaceModel& model);
  Eigen::MatrixXcd at(double omega) const;
  double max_gain(double omega) const;  // sigma_max(G(e^{j omega}))

 private:
  Eigen::MatrixXcd H_;   // Hessenberg form of A
  Eigen::MatrixXcd CQ_;  // C * Q
  Eigen::MatrixXcd QtB_; // Q^T * B
};

/// Normalized singular-value gap: min over adjacent unequal values of
/// 1 - sigma_{i+1}/sigma_i, with sigma_{last+1} = 0 and values below `floor`
/// treated as zero. Equal neighbours are skipped. Aborts on empty input.
double delta_plus(const Eigen::VectorXd& sigmas, double floor = 0.0);

struct NoiseToSignal {
  double beta;  // ||T_{0,horizon}||_2, the input Toeplitz section norm
  double R;     // ||TO_{0,horizon}||_2 / ||T_{0,horizon}||_2
};

/// Spectral norms of the truncated input and process-noise Toeplitz
/// operators. beta converges to the H-infinity norm as horizon grows.
NoiseToSignal noise_to_signal(const StateSpaceModel& model, int horizon);

/// Smallest d with M rho(A)^d / (1 - rho(A)) <= tol, using the measured decay
/// of the Markov parameters; horizon for truncating the infinite operators.
/// Nilpotent systems get their exact support length.
int decay_horizon(const StateSpaceModel& model, double tol = 1e-8);

}  // namespace sysid

#endif  // SYSID_NORMS_HPP
