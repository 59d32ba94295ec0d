#ifndef SYSID_SIMULATE_HPP
#define SYSID_SIMULATE_HPP

#include <cstdint>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "sysid/state_space.hpp"

namespace sysid {

struct NoiseSpec {
  double eta_std = 1.0;    // process-noise std per coordinate
  double w_std = 1.0;      // output-noise std per coordinate
  double input_std = 1.0;  // std of the i.i.d. Gaussian inputs
};

/// One recorded input-output run. Row t (0-based) holds U_{t+1}, Y_{t+1}.
struct Trajectory {
  Eigen::MatrixXd U;  // T_total x m
  Eigen::MatrixXd Y;  // T_total x p
  std::uint64_t seed = 0;
  double noise_scale_eta = 0.0;
  double noise_scale_w = 0.0;
  bool unstable_model = false;

  Eigen::Index length() const { return U.rows(); }
  Eigen::Index input_dim() const { return U.cols(); }
  Eigen::Index output_dim() const { return Y.cols(); }
};

/// Runs X_{t+1} = A X_t + B U_t + eta_{t+1}, Y_t = C X_t + w_t from X_1 = 0
/// with U_t ~ N(0, input_std^2 I). Deterministic given (model, spec, seed);
/// the input, process-noise and output-noise streams are independent, so the
/// same seed gives the same noise regardless of the input channel.
Trajectory simulate(const StateSpaceModel& model, int T_total,
                    const NoiseSpec& noise, std::uint64_t seed);

/// Same dynamics with caller-supplied inputs (T_total x m); the test hook for
/// impulse and other designed-input runs.
Trajectory simulate_with_inputs(const StateSpaceModel& model,
                                const Eigen::MatrixXd& inputs,
                                const NoiseSpec& noise, std::uint64_t seed);

/// Shift-register realization of a random FIR transfer function
/// sum_l w_l rho^l z^{-l}: A the nilpotent down-shift, B = e_1,
/// C = [g_1..g_order] with g_l = w_l rho^l, w_l ~ N(0, weight_std^2).
/// The paper-scale instance is order 150, rho = 0.9, weight_std = 5.
StateSpaceModel fixture_fir(int order, double rho, double weight_std,
                            std::uint64_t seed);

/// Deterministic-weight variant (the seed hook for exact expectations).
StateSpaceModel fixture_fir_with_weights(const Eigen::VectorXd& weights,
                                         double rho);

/// The order-n companion system M1 (with -a feedback) and its 2-state
/// approximation M2; ||M1 - M2||_inf <= 2 n a.
std::pair<StateSpaceModel, StateSpaceModel> fixture_example1(int n, double a);

/// The canonical 3-state pair (M0 rank 1, M1 rank >= 2) parametrized by
/// zeta in (-1, 1) and the Assumption-2 constants beta, R.
std::pair<StateSpaceModel, StateSpaceModel> fixture_lowerbound(double zeta,
                                                               double beta,
                                                               double R);

/// Trajectory CSV: header t,u_1..u_m,y_1..y_p, one row per step, floats
/// written with 17 significant digits so the round trip is value-exact.
void save_trajectory_csv(const Trajectory& traj, const std::string& path);
Trajectory load_trajectory_csv(const std::string& path);

}  // namespace sysid

#endif  // SYSID_SIMULATE_HPP
