#include "sysid/simulate.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sysid/rng.hpp"

namespace sysid {

namespace {

constexpr std::uint64_t kInputStream = 0;
constexpr std::uint64_t kProcessNoiseStream = 1;
constexpr std::uint64_t kOutputNoiseStream = 2;
constexpr std::uint64_t kWeightStream = 0xF1;

Trajectory run(const StateSpaceModel& model, const Eigen::MatrixXd& inputs,
               const NoiseSpec& noise, std::uint64_t seed) {
  const Eigen::Index T = inputs.rows();
  const Eigen::Index n = model.state_dim();
  const Eigen::Index p = model.output_dim();

  GaussianStream eta(seed, kProcessNoiseStream);
  GaussianStream w(seed, kOutputNoiseStream);

  Trajectory traj;
  traj.U = inputs;
  traj.Y.resize(T, p);
  traj.seed = seed;
  traj.noise_scale_eta = noise.eta_std;
  traj.noise_scale_w = noise.w_std;
  traj.unstable_model = model.spectral_radius() >= 1.0;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);  // X_1 = 0
  for (Eigen::Index t = 0; t < T; ++t) {
    traj.Y.row(t) =
        (model.C * x + noise.w_std * w.vector(p)).transpose();
    x = model.A * x + model.B * inputs.row(t).transpose() +
        noise.eta_std * eta.vector(n);
  }
  if (!traj.U.allFinite() || !traj.Y.allFinite())
    throw std::runtime_error("simulate: non-finite trajectory values");
  return traj;
}

}  // namespace

Trajectory simulate(const StateSpaceModel& model, int T_total,
                    const NoiseSpec& noise, std::uint64_t seed) {
  if (T_total < 1) throw std::invalid_argument("simulate: T_total >= 1");
  GaussianStream input(seed, kInputStream);
  Eigen::MatrixXd U(T_total, model.input_dim());
  for (int t = 0; t < T_total; ++t)
    U.row(t) = (noise.input_std * input.vector(model.input_dim())).transpose();
  return run(model, U, noise, seed);
}

Trajectory simulate_with_inputs(const StateSpaceModel& model,
                                const Eigen::MatrixXd& inputs,
                                const NoiseSpec& noise, std::uint64_t seed) {
  if (inputs.rows() < 1)
    throw std::invalid_argument("simulate_with_inputs: empty input sequence");
  if (inputs.cols() != model.input_dim())
    throw std::invalid_argument("simulate_with_inputs: input width mismatch");
  return run(model, inputs, noise, seed);
}

StateSpaceModel fixture_fir_with_weights(const Eigen::VectorXd& weights,
                                         double rho) {
  const Eigen::Index order = weights.size();
  if (order < 1) throw std::invalid_argument("fixture_fir: order >= 1");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(order, order);
  A.diagonal(-1).setOnes();  // down-shift: A e_i = e_{i+1}
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(order, 1);
  B(0, 0) = 1.0;
  Eigen::MatrixXd C(1, order);
  double rl = 1.0;
  for (Eigen::Index l = 0; l < order; ++l) {
    rl *= rho;
    C(0, l) = weights(l) * rl;  // g_l = w_l rho^l, l = 1..order
  }
  return StateSpaceModel(C, A, B);
}

StateSpaceModel fixture_fir(int order, double rho, double weight_std,
                            std::uint64_t seed) {
  if (order < 1) throw std::invalid_argument("fixture_fir: order >= 1");
  GaussianStream ws(seed, kWeightStream);
  Eigen::VectorXd w = weight_std * ws.vector(order);
  return fixture_fir_with_weights(w, rho);
}

std::pair<StateSpaceModel, StateSpaceModel> fixture_example1(int n, double a) {
  if (n <= 2) throw std::invalid_argument("fixture_example1: n > 2 required");
  Eigen::MatrixXd A1 = Eigen::MatrixXd::Zero(n, n);
  A1.diagonal(1).setOnes();
  A1(n - 1, 0) = -a;
  Eigen::MatrixXd B1 = Eigen::MatrixXd::Zero(n, 1);
  B1(n - 1, 0) = 1.0;
  StateSpaceModel M1(B1.transpose(), A1, B1);

  Eigen::MatrixXd A2(2, 2);
  A2 << 0, 0, 1, 0;
  Eigen::MatrixXd B2(2, 1);
  B2 << 0, 1;
  StateSpaceModel M2(B2.transpose(), A2, B2);
  return {std::move(M1), std::move(M2)};
}

std::pair<StateSpaceModel, StateSpaceModel> fixture_lowerbound(double zeta,
                                                               double beta,
                                                               double R) {
  if (std::abs(zeta) >= 1.0)
    throw std::invalid_argument("fixture_lowerbound: |zeta| < 1 required");
  if (beta <= 0.0 || R <= 0.0)
    throw std::invalid_argument("fixture_lowerbound: beta, R must be positive");
  Eigen::MatrixXd A(3, 3);
  A << 0, 1, 0, 0, 0, 0, zeta, 0, 0;
  const double b = std::sqrt(beta) / R;
  Eigen::MatrixXd B0(3, 1), B1(3, 1), C(1, 3);
  B0 << 0, 0, b;
  B1 << 0, b, b;
  C << 0, 0, std::sqrt(beta) * R;
  return {StateSpaceModel(C, A, B0), StateSpaceModel(C, A, B1)};
}

void save_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_trajectory_csv: cannot open " + path);
  out << "t";
  for (Eigen::Index j = 0; j < traj.input_dim(); ++j) out << ",u_" << j + 1;
  for (Eigen::Index j = 0; j < traj.output_dim(); ++j) out << ",y_" << j + 1;
  out << "\r\n";
  char buf[40];
  for (Eigen::Index t = 0; t < traj.length(); ++t) {
    out << t + 1;
    for (Eigen::Index j = 0; j < traj.input_dim(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", traj.U(t, j));
      out << ',' << buf;
    }
    for (Eigen::Index j = 0; j < traj.output_dim(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", traj.Y(t, j));
      out << ',' << buf;
    }
    out << "\r\n";
  }
}

Trajectory load_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_trajectory_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("load_trajectory_csv: empty file");
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
    line.pop_back();
  Eigen::Index m = 0, p = 0;
  {
    std::stringstream header(line);
    std::string field;
    if (!std::getline(header, field, ',') || field != "t")
      throw std::runtime_error("load_trajectory_csv: bad header");
    while (std::getline(header, field, ',')) {
      if (field.rfind("u_", 0) == 0)
        ++m;
      else if (field.rfind("y_", 0) == 0)
        ++p;
      else
        throw std::runtime_error("load_trajectory_csv: unexpected column " +
                                 field);
    }
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<double> row;
    std::getline(ss, field, ',');  // t column
    while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
    if (static_cast<Eigen::Index>(row.size()) != m + p)
      throw std::runtime_error("load_trajectory_csv: row width mismatch");
    rows.push_back(std::move(row));
  }
  Trajectory traj;
  traj.U.resize(rows.size(), m);
  traj.Y.resize(rows.size(), p);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    for (Eigen::Index j = 0; j < m; ++j) traj.U(t, j) = rows[t][j];
    for (Eigen::Index j = 0; j < p; ++j) traj.Y(t, j) = rows[t][m + j];
  }
  return traj;
}

}  // namespace sysid
