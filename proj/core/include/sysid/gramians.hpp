#ifndef SYSID_GRAMIANS_HPP
#define SYSID_GRAMIANS_HPP

#include <Eigen/Core>

#include "sysid/state_space.hpp"

namespace sysid {

/// Controllability gramian P = A P A^T + B B^T and observability gramian
/// Q = A^T Q A + C^T C of a Schur-stable model.
struct GramianPair {
  Eigen::MatrixXd P;
  Eigen::MatrixXd Q;
};

GramianPair gramians(const StateSpaceModel& model);

/// Hankel singular values: square roots of the eigenvalues of P Q, sorted
/// descending, length n. Equal to the singular values of the infinite system
/// Hankel matrix.
Eigen::VectorXd hankel_singular_values(const StateSpaceModel& model);

/// Square-root balancing: returns an equivalent realization whose two
/// gramians are a common diagonal of Hankel singular values. Requires a
/// minimal model (all Hankel singular values > 1e-10 * sigma_1); throws
/// std::domain_error naming the numerical rank otherwise.
StateSpaceModel balanced_realization(const StateSpaceModel& model);

/// Balanced truncation to order r (the leading r x r partition of the
/// balanced realization). Handles non-minimal models by truncating to the
/// numerically minimal subspace first; r >= n returns a balanced copy.
StateSpaceModel balanced_truncate(const StateSpaceModel& model, int r);

}  // namespace sysid

#endif  // SYSID_GRAMIANS_HPP
