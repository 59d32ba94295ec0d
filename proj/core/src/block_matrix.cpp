#include "sysid/block_matrix.hpp"

#include <stdexcept>

#include <Eigen/SVD>

namespace sysid {

BlockMatrix hankel_from_markov(const std::vector<Eigen::MatrixXd>& markov,
                               int k, int p_blocks, int q_blocks) {
  if (p_blocks < 1 || q_blocks < 1)
    throw std::invalid_argument("hankel: block counts must be positive");
  const std::size_t needed = static_cast<std::size_t>(k + p_blocks + q_blocks - 1);
  if (markov.size() < needed)
    throw std::invalid_argument("hankel: markov sequence too short");
  const Eigen::Index p = markov.front().rows();
  const Eigen::Index m = markov.front().cols();
  BlockMatrix H;
  H.block_rows = p_blocks;
  H.block_cols = q_blocks;
  H.block_height = p;
  H.block_width = m;
  H.data.resize(p_blocks * p, q_blocks * m);
  for (int i = 0; i < p_blocks; ++i)
    for (int j = 0; j < q_blocks; ++j)
      H.data.block(i * p, j * m, p, m) = markov[k + i + j];
  return H;
}

BlockMatrix build_hankel(const StateSpaceModel& model, int k, int p_blocks,
                         int q_blocks) {
  if (k < 0) throw std::invalid_argument("build_hankel: k must be >= 0");
  const auto markov = markov_parameters(model, k + p_blocks + q_blocks - 1);
  return hankel_from_markov(markov, k, p_blocks, q_blocks);
}

BlockMatrix build_toeplitz(const StateSpaceModel& model, int k, int d,
                           ToeplitzKernel kernel) {
  if (d < 1) throw std::invalid_argument("build_toeplitz: d must be >= 1");
  if (k < 0) throw std::invalid_argument("build_toeplitz: k must be >= 0");
  const Eigen::Index p = model.output_dim();
  const Eigen::Index w =
      kernel == ToeplitzKernel::input ? model.input_dim() : model.state_dim();

  // kernel element j = C A^{k+j} B (input) or C A^{k+j} (noise), j = 0..d-2
  std::vector<Eigen::MatrixXd> kern;
  kern.reserve(d > 1 ? d - 1 : 0);
  Eigen::MatrixXd X = Eigen::MatrixXd::Identity(model.state_dim(),
                                                model.state_dim());
  for (int j = 0; j < k; ++j) X = model.A * X;
  for (int j = 0; j + 1 < d; ++j) {
    kern.push_back(kernel == ToeplitzKernel::input
                       ? Eigen::MatrixXd(model.C * X * model.B)
                       : Eigen::MatrixXd(model.C * X));
    X = model.A * X;
  }

  BlockMatrix T;
  T.block_rows = d;
  T.block_cols = d;
  T.block_height = p;
  T.block_width = w;
  T.data.setZero(d * p, d * w);
  for (int i = 1; i < d; ++i)
    for (int j = 0; j < i; ++j)
      T.data.block(i * p, j * w, p, w) = kern[i - j - 1];
  return T;
}

double padded_diff_norm(const BlockMatrix& small, const BlockMatrix& big) {
  if (small.block_height != big.block_height ||
      small.block_width != big.block_width)
    throw std::invalid_argument("padded_diff_norm: block sizes differ");
  if (small.block_rows > big.block_rows || small.block_cols > big.block_cols)
    throw std::invalid_argument(
        "padded_diff_norm: small grid does not fit inside big");
  Eigen::MatrixXd diff = -big.data;
  diff.topLeftCorner(small.data.rows(), small.data.cols()) += small.data;
  return spectral_norm(diff);
}

double spectral_norm(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 0.0;
  return Eigen::BDCSVD<Eigen::MatrixXd>(M).singularValues()(0);
}

}  // namespace sysid
