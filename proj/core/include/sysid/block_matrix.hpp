#ifndef SYSID_BLOCK_MATRIX_HPP
#define SYSID_BLOCK_MATRIX_HPP

#include <vector>

#include <Eigen/Core>

#include "sysid/state_space.hpp"

namespace sysid {

/// Dense matrix with an explicit block grid: data is
/// (block_rows * block_height) x (block_cols * block_width).
struct BlockMatrix {
  Eigen::MatrixXd data;
  Eigen::Index block_rows = 0;
  Eigen::Index block_cols = 0;
  Eigen::Index block_height = 0;  // p
  Eigen::Index block_width = 0;   // m

  Eigen::Block<const Eigen::MatrixXd> block(Eigen::Index i,
                                            Eigen::Index j) const {
    return data.block(i * block_height, j * block_width, block_height,
                      block_width);
  }
};

/// Block Hankel matrix: block (i, j) = C A^{k+i+j} B, i < p_blocks,
/// j < q_blocks. Assembled from a single Markov-parameter sweep of length
/// k + p_blocks + q_blocks - 1.
BlockMatrix build_hankel(const StateSpaceModel& model, int k, int p_blocks,
                         int q_blocks);

/// Same grid, built from a precomputed Markov sequence (element k is CA^k B).
BlockMatrix hankel_from_markov(const std::vector<Eigen::MatrixXd>& markov,
                               int k, int p_blocks, int q_blocks);

enum class ToeplitzKernel { input, noise };

/// Strictly block-lower-triangular Toeplitz matrix on a d x d block grid.
/// Sub-diagonal j holds C A^{k+j-1} B (input kernel, p x m blocks) or
/// C A^{k+j-1} (noise kernel, p x n blocks); the diagonal is zero.
BlockMatrix build_toeplitz(const StateSpaceModel& model, int k, int d,
                           ToeplitzKernel kernel);

/// Spectral norm of (zero-padded small) - big, the paper's convention for
/// differencing matrices of unequal size. Block sizes must agree and small's
/// grid must fit inside big's.
double padded_diff_norm(const BlockMatrix& small, const BlockMatrix& big);

/// Spectral norm (largest singular value).
double spectral_norm(const Eigen::MatrixXd& M);

}  // namespace sysid

#endif  // SYSID_BLOCK_MATRIX_HPP
