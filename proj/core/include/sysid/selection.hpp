#ifndef SYSID_SELECTION_HPP
#define SYSID_SELECTION_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sysid/ols.hpp"
#include "sysid/simulate.hpp"

namespace sysid {

/// Tuning constants for the data-driven window and order rules.
///
/// c_univ is the universal constant in the window-consistency threshold
/// C beta R (alpha(h) + 2 alpha(l)) and, clamped to >= 1, in the candidate
/// feasibility bounds. The order rule's tau uses its own constant, which
/// defaults to delta_plus / kappa when the normalized gap is known (the
/// calibration under which tau(delta_plus) reduces to R alpha(d_hat)) and to
/// c_univ otherwise; set tau_constant to override.
struct SelectionConfig {
  double delta = 0.05;  // confidence
  double kappa = 20.0;  // threshold aggressiveness, theory wants >= 20
  double c_univ = 1.0;
  double beta = 1.0;  // H-infinity bound of Assumption 2
  double R = 1.0;     // noise-to-signal bound of Assumption 2
  std::optional<double> delta_plus;    // known normalized singular-value gap
  std::optional<double> tau_constant;  // override for tau's constant
  int p = 1;  // output dimension
  int m = 1;  // input dimension

  double tau_c() const {
    if (tau_constant) return *tau_constant;
    return delta_plus ? *delta_plus / kappa : c_univ;
  }
  bool kappa_below_theory() const { return kappa < 20.0; }
  void validate() const;
};

struct SelectionTrace {
  std::vector<int> candidate_ds;
  // gap test detail: one record per evaluated (l, h) pair
  struct PairGap {
    int l = 0, h = 0;
    double gap = 0.0;
    double threshold = 0.0;
  };
  std::vector<PairGap> pairwise_gaps;
  int d0 = 0;
  int d_hat = 0;
  int log_floor = 0;
  int feasibility_cap = 0;
  bool no_consistent_l = false;
  Eigen::Index effective_T = 0;

  int k = -1;  // filled by choose_k when run as part of a pipeline
  std::vector<double> k_thresholds;  // per-l threshold that sigma_l/beta faced
  bool known_gap_branch = false;

  std::string to_json() const;
};

/// alpha(h) = sqrt(h) sqrt((h p + ln(T/delta)) / T).
double alpha(int h, const SelectionConfig& cfg, Eigen::Index T);

/// Candidate windows: every integer d >= 1 with
/// d <= T / (4 C m ln(T/delta)) and d <= sqrt(T / (4 C ln(2/delta))),
/// C = max(c_univ, 1). Throws std::domain_error when empty.
std::vector<int> candidate_set(const SelectionConfig& cfg, Eigen::Index T);

/// Algorithm "choice of d": the smallest window l whose estimate is
/// consistent with every larger candidate h under the threshold
/// c_univ beta R (alpha(h) + 2 alpha(l)); d_hat is that l pushed up to the
/// ceil(ln(T/delta)) floor and clamped to the feasibility cap. When no l
/// passes, the largest candidate is returned and flagged in the trace.
std::pair<int, SelectionTrace> choose_d(const Trajectory& traj,
                                        const SelectionConfig& cfg,
                                        int workers = 0);

/// tau(gap) = kappa c R sqrt(d_hat) / gap * sqrt((p d_hat + ln(T/delta)) / T).
double tau(double gap, int d_hat, const SelectionConfig& cfg, Eigen::Index T);

/// Algorithm "choice of k": the largest l with sigma_l / beta >= 4 tau(gap),
/// gap = delta_plus when known, else the data-driven
/// sqrt(beta / (sigma_l l)) surrogate under a square-root threshold.
/// k = 0 when nothing clears the threshold.
std::pair<int, SelectionTrace> choose_k(const Eigen::VectorXd& sigmas,
                                        int d_hat, const SelectionConfig& cfg,
                                        Eigen::Index T);

/// Data-driven normalized gap: delta_plus of the singular values after
/// zeroing everything below noise_floor * sigma_1. Pass a negative
/// noise_floor to use the default 4 tau(1) beta / sigma_1.
double estimate_delta_plus(const Eigen::VectorXd& sigmas, double noise_floor,
                           int d_hat, const SelectionConfig& cfg,
                           Eigen::Index T);

}  // namespace sysid

#endif  // SYSID_SELECTION_HPP
