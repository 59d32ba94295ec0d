#ifndef SYSID_STATE_SPACE_HPP
#define SYSID_STATE_SPACE_HPP

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace sysid {

/// Discrete-time LTI system
///   X_{t+1} = A X_t + B U_t + eta_{t+1},   Y_t = C X_t + w_t
/// held as the triple (C, A, B) with C: p x n, A: n x n, B: n x m.
/// There is no feedthrough term.
struct StateSpaceModel {
  Eigen::MatrixXd C;
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;

  StateSpaceModel() = default;
  StateSpaceModel(Eigen::MatrixXd C_in, Eigen::MatrixXd A_in,
                  Eigen::MatrixXd B_in);

  Eigen::Index output_dim() const { return C.rows(); }  // p
  Eigen::Index input_dim() const { return B.cols(); }   // m
  Eigen::Index state_dim() const { return A.rows(); }   // n

  double spectral_radius() const;
  bool is_schur_stable() const { return spectral_radius() < 1.0; }

  /// (C S^-1, S A S^-1, S B); preserves the transfer function.
  StateSpaceModel similarity_transform(const Eigen::MatrixXd& S) const;
};

/// Impulse-response sequence C A^k B for k = 0..count-1, by iterated multiply.
std::vector<Eigen::MatrixXd> markov_parameters(const StateSpaceModel& model,
                                               int count);

/// G(z) = C (zI - A)^{-1} B. Throws std::domain_error when z is a pole.
Eigen::MatrixXcd transfer_function(const StateSpaceModel& model,
                                   std::complex<double> z);

/// Model file I/O: JSON object with keys "C", "A", "B" as row-major nested
/// arrays; dimensions are inferred and cross-validated.
std::string model_to_json(const StateSpaceModel& model);
StateSpaceModel model_from_json(const std::string& text);
void save_model(const StateSpaceModel& model, const std::string& path);
StateSpaceModel load_model(const std::string& path);

}  // namespace sysid

#endif  // SYSID_STATE_SPACE_HPP
