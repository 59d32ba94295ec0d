#include "sysid/state_space.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <json.hpp>

namespace sysid {

StateSpaceModel::StateSpaceModel(Eigen::MatrixXd C_in, Eigen::MatrixXd A_in,
                                 Eigen::MatrixXd B_in)
    : C(std::move(C_in)), A(std::move(A_in)), B(std::move(B_in)) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("StateSpaceModel: A must be square");
  if (C.cols() != A.rows())
    throw std::invalid_argument("StateSpaceModel: C has " +
                                std::to_string(C.cols()) +
                                " columns, expected " + std::to_string(A.rows()));
  if (B.rows() != A.rows())
    throw std::invalid_argument("StateSpaceModel: B has " +
                                std::to_string(B.rows()) + " rows, expected " +
                                std::to_string(A.rows()));
}

double StateSpaceModel::spectral_radius() const {
  if (A.size() == 0) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> eig(A, /*computeEigenvectors=*/false);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

StateSpaceModel StateSpaceModel::similarity_transform(
    const Eigen::MatrixXd& S) const {
  if (S.rows() != state_dim() || S.cols() != state_dim())
    throw std::invalid_argument("similarity_transform: S dimension mismatch");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(S);
  const Eigen::MatrixXd S_inv = lu.inverse();
  return StateSpaceModel(C * S_inv, S * A * S_inv, S * B);
}

std::vector<Eigen::MatrixXd> markov_parameters(const StateSpaceModel& model,
                                               int count) {
  if (count < 1) throw std::invalid_argument("markov_parameters: count >= 1");
  std::vector<Eigen::MatrixXd> out;
  out.reserve(count);
  Eigen::MatrixXd X = model.B;  // A^k B
  for (int k = 0; k < count; ++k) {
    out.push_back(model.C * X);
    if (k + 1 < count) X = model.A * X;
  }
  return out;
}

Eigen::MatrixXcd transfer_function(const StateSpaceModel& model,
                                   std::complex<double> z) {
  const Eigen::Index n = model.state_dim();
  Eigen::MatrixXcd zIA =
      z * Eigen::MatrixXcd::Identity(n, n) - model.A.cast<std::complex<double>>();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(zIA);
  if (!lu.isInvertible()) {
    std::ostringstream os;
    os << "transfer_function: z = " << z.real() << (z.imag() < 0 ? "-" : "+")
       << std::abs(z.imag()) << "i is a pole of the system";
    throw std::domain_error(os.str());
  }
  return model.C.cast<std::complex<double>>() *
         lu.solve(model.B.cast<std::complex<double>>());
}

namespace {

nlohmann::json matrix_to_rows(const Eigen::MatrixXd& M) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd rows_to_matrix(const nlohmann::json& rows,
                               const std::string& name) {
  if (!rows.is_array() || rows.empty())
    throw std::invalid_argument("model JSON: \"" + name +
                                "\" must be a non-empty array of rows");
  const std::size_t ncols = rows.front().size();
  Eigen::MatrixXd M(rows.size(), ncols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (!row.is_array() || row.size() != ncols)
      throw std::invalid_argument("model JSON: ragged rows in \"" + name +
                                  "\"");
    for (std::size_t j = 0; j < ncols; ++j)
      M(i, j) = row[j].get<double>();
  }
  return M;
}

}  // namespace

std::string model_to_json(const StateSpaceModel& model) {
  nlohmann::json j;
  j["C"] = matrix_to_rows(model.C);
  j["A"] = matrix_to_rows(model.A);
  j["B"] = matrix_to_rows(model.B);
  return j.dump(2);
}

StateSpaceModel model_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "C" && key != "A" && key != "B" && key != "sigmas_used")
      throw std::invalid_argument("model JSON: unknown key \"" + key + "\"");
  }
  return StateSpaceModel(rows_to_matrix(j.at("C"), "C"),
                         rows_to_matrix(j.at("A"), "A"),
                         rows_to_matrix(j.at("B"), "B"));
}

void save_model(const StateSpaceModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_model: cannot open " + path);
  out << model_to_json(model) << '\n';
}

StateSpaceModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_model: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

}  // namespace sysid
