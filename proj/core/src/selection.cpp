#include "sysid/selection.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <Eigen/SVD>

#include <json.hpp>

#include "sysid/block_matrix.hpp"
#include "sysid/norms.hpp"

namespace sysid {

namespace {

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  if (workers <= 0)
    workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

Trajectory slice(const Trajectory& traj, Eigen::Index len) {
  Trajectory s;
  s.U = traj.U.topRows(len);
  s.Y = traj.Y.topRows(len);
  s.seed = traj.seed;
  s.noise_scale_eta = traj.noise_scale_eta;
  s.noise_scale_w = traj.noise_scale_w;
  s.unstable_model = traj.unstable_model;
  return s;
}

}  // namespace

void SelectionConfig::validate() const {
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("SelectionConfig: delta must be in (0,1)");
  if (beta <= 0.0) throw std::invalid_argument("SelectionConfig: beta > 0");
  if (R < 1.0)
    throw std::invalid_argument("SelectionConfig: R must be >= 1");
  if (c_univ <= 0.0)
    throw std::invalid_argument("SelectionConfig: c_univ > 0");
  if (kappa <= 0.0)
    throw std::invalid_argument("SelectionConfig: kappa > 0");
  if (delta_plus && (*delta_plus <= 0.0 || *delta_plus > 1.0))
    throw std::invalid_argument("SelectionConfig: delta_plus in (0,1]");
  if (p < 1 || m < 1)
    throw std::invalid_argument("SelectionConfig: p, m must be positive");
}

double alpha(int h, const SelectionConfig& cfg, Eigen::Index T) {
  if (h < 1) throw std::invalid_argument("alpha: h >= 1");
  if (T < 1) throw std::invalid_argument("alpha: T >= 1");
  const double Td = static_cast<double>(T);
  return std::sqrt(static_cast<double>(h)) *
         std::sqrt((h * cfg.p + std::log(Td / cfg.delta)) / Td);
}

std::vector<int> candidate_set(const SelectionConfig& cfg, Eigen::Index T) {
  cfg.validate();
  const double Td = static_cast<double>(T);
  const double C = std::max(cfg.c_univ, 1.0);
  const double bound1 = Td / (4.0 * C * cfg.m * std::log(Td / cfg.delta));
  const double bound2 = std::sqrt(Td / (4.0 * C * std::log(2.0 / cfg.delta)));
  const int d_max = static_cast<int>(std::floor(std::min(bound1, bound2)));
  if (d_max < 1)
    throw std::domain_error(
        "candidate_set: no feasible window at T = " + std::to_string(T) +
        "; increase the trajectory length");
  std::vector<int> ds(d_max);
  for (int i = 0; i < d_max; ++i) ds[i] = i + 1;
  return ds;
}

std::pair<int, SelectionTrace> choose_d(const Trajectory& traj,
                                        const SelectionConfig& cfg,
                                        int workers) {
  cfg.validate();
  const Eigen::Index L = traj.length();

  // Fixed point of cap(T), T = L - 2 cap: every candidate fit then shares the
  // same effective sample count, as the shared-T thresholds assume.
  Eigen::Index T = L;
  std::vector<int> cands = candidate_set(cfg, T);
  for (int iter = 0; iter < 8; ++iter) {
    const Eigen::Index T_next = L - 2 * static_cast<Eigen::Index>(cands.back());
    if (T_next < 1)
      throw std::invalid_argument("choose_d: trajectory too short");
    if (T_next == T) break;
    T = T_next;
    cands = candidate_set(cfg, T);
  }
  const int cap = cands.back();
  if (T < static_cast<Eigen::Index>(cfg.m) * cap)
    throw std::invalid_argument(
        "choose_d: trajectory too short for the largest candidate window");

  SelectionTrace trace;
  trace.candidate_ds = cands;
  trace.effective_T = T;
  trace.feasibility_cap = cap;

  // one Hankel fit per candidate, all with exactly T columns
  std::vector<HankelEstimate> fits(cands.size());
  parallel_for(static_cast<int>(cands.size()), workers, [&](int i) {
    const int l = cands[i];
    fits[i] = estimate_hankel(slice(traj, T + 2 * l), l);
  });

  const auto as_block = [&](const HankelEstimate& e) {
    BlockMatrix b;
    b.data = e.H_hat;
    b.block_rows = e.d;
    b.block_cols = e.d;
    b.block_height = cfg.p;
    b.block_width = cfg.m;
    return b;
  };

  int d0 = -1;
  for (std::size_t li = 0; li < cands.size() && d0 < 0; ++li) {
    bool ok = true;
    for (std::size_t hi = li; hi < cands.size(); ++hi) {
      const double threshold =
          cfg.c_univ * cfg.beta * cfg.R *
          (alpha(cands[hi], cfg, T) + 2.0 * alpha(cands[li], cfg, T));
      const double gap =
          padded_diff_norm(as_block(fits[li]), as_block(fits[hi]));
      trace.pairwise_gaps.push_back(
          {cands[li], cands[hi], gap, threshold});
      if (gap > threshold) {
        ok = false;
        break;
      }
    }
    if (ok) d0 = cands[li];
  }
  if (d0 < 0) {
    d0 = cands.back();
    trace.no_consistent_l = true;
  }
  trace.d0 = d0;
  trace.log_floor = static_cast<int>(
      std::ceil(std::log(static_cast<double>(T) / cfg.delta)));
  trace.d_hat = std::min(std::max(d0, trace.log_floor), cap);
  return {trace.d_hat, trace};
}

double tau(double gap, int d_hat, const SelectionConfig& cfg, Eigen::Index T) {
  if (gap <= 0.0) throw std::invalid_argument("tau: gap must be positive");
  if (d_hat < 1) throw std::invalid_argument("tau: d_hat >= 1");
  return cfg.kappa * cfg.tau_c() * cfg.R *
         std::sqrt(static_cast<double>(d_hat)) / gap *
         std::sqrt((cfg.p * d_hat + std::log(static_cast<double>(T) /
                                             cfg.delta)) /
                   static_cast<double>(T));
}

std::pair<int, SelectionTrace> choose_k(const Eigen::VectorXd& sigmas,
                                        int d_hat, const SelectionConfig& cfg,
                                        Eigen::Index T) {
  cfg.validate();
  SelectionTrace trace;
  trace.d_hat = d_hat;
  trace.known_gap_branch = cfg.delta_plus.has_value();
  int k = 0;
  for (Eigen::Index i = 0; i < sigmas.size(); ++i) {
    const int l = static_cast<int>(i) + 1;
    double threshold;
    if (cfg.delta_plus) {
      threshold = 4.0 * tau(*cfg.delta_plus, d_hat, cfg, T);
    } else {
      if (sigmas(i) <= 0.0) {
        trace.k_thresholds.push_back(std::numeric_limits<double>::infinity());
        continue;
      }
      const double gap = std::sqrt(cfg.beta / (sigmas(i) * l));
      threshold = 4.0 * std::sqrt(tau(gap, d_hat, cfg, T));
    }
    trace.k_thresholds.push_back(threshold);
    if (sigmas(i) / cfg.beta >= threshold) k = l;  // literal sup
  }
  trace.k = k;
  return {k, trace};
}

double estimate_delta_plus(const Eigen::VectorXd& sigmas, double noise_floor,
                           int d_hat, const SelectionConfig& cfg,
                           Eigen::Index T) {
  if (sigmas.size() == 0)
    throw std::invalid_argument("estimate_delta_plus: empty input");
  const double s1 = sigmas(0);
  if (s1 <= 0.0) return 1.0;
  if (noise_floor < 0.0)
    noise_floor = 4.0 * tau(1.0, d_hat, cfg, T) * cfg.beta / s1;
  return delta_plus(sigmas, noise_floor * s1);
}

std::string SelectionTrace::to_json() const {
  nlohmann::json j;
  j["candidate_ds"] = candidate_ds;
  j["d0"] = d0;
  j["d_hat"] = d_hat;
  j["log_floor"] = log_floor;
  j["feasibility_cap"] = feasibility_cap;
  j["no_consistent_l"] = no_consistent_l;
  j["effective_T"] = effective_T;
  j["k"] = k;
  j["known_gap_branch"] = known_gap_branch;
  j["k_thresholds"] = k_thresholds;
  nlohmann::json gaps = nlohmann::json::array();
  for (const auto& g : pairwise_gaps)
    gaps.push_back({{"l", g.l},
                    {"h", g.h},
                    {"gap", g.gap},
                    {"threshold", g.threshold}});
  j["pairwise_gaps"] = std::move(gaps);
  return j.dump(2);
}

}  // namespace sysid
