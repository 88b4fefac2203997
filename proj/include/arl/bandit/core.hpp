#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "arl/rng.hpp"

namespace arl::bandit {

// Arms are 0-based throughout the library. The CLI and CSV output use the
// same indices.

/// Active Bernoulli bandit: K arms, a known horizon and a fixed per-query cost.
class BernoulliBandit {
 public:
  BernoulliBandit(std::vector<double> means, int horizon, double query_cost);

  std::size_t num_arms() const { return means_.size(); }
  int horizon() const { return horizon_; }
  double query_cost() const { return query_cost_; }
  double mean(std::size_t arm) const { return means_.at(arm); }
  const std::vector<double>& means() const { return means_; }

  double best_mean() const { return best_mean_; }
  double gap(std::size_t arm) const { return best_mean_ - means_.at(arm); }

 private:
  std::vector<double> means_;
  int horizon_;
  double query_cost_;
  double best_mean_;
};

struct PullResult {
  int reward = 0;
  std::optional<int> observation;
};

/// Draws one reward from `arm`. Exactly one uniform is consumed per call so
/// that runs sharing an environment stream see the same reward coins.
PullResult pull(const BernoulliBandit& bandit, std::size_t arm, bool query, Rng& rng);

struct ArmBelief {
  double alpha = 1.0;
  double beta = 1.0;
  long pulls = 0;
  long observed_count = 0;

  double mean() const { return alpha / (alpha + beta); }
};

/// Uniform Beta(1,1) beliefs for every arm.
std::vector<ArmBelief> uniform_beliefs(std::size_t num_arms, double prior_alpha = 1.0,
                                       double prior_beta = 1.0);

/// Conjugate Beta-Bernoulli update. `observation` must be 0 or 1.
ArmBelief update_belief(ArmBelief belief, int observation);

/// Index of the highest posterior mean; ties go to the lowest index.
std::size_t best_posterior_arm(std::span<const ArmBelief> beliefs);

/// Sequential record of a single run. Rounds are 1-based: after recording
/// k rounds, `t() == k + 1`.
class BanditRunState {
 public:
  explicit BanditRunState(const BernoulliBandit& bandit);

  /// Appends round `t()`. Throws std::logic_error if the commit invariant
  /// would be broken.
  void record(std::size_t arm, bool query);

  /// Marks the run as committed to `arm` from the next recorded round on.
  void commit(std::size_t arm);

  int t() const { return static_cast<int>(actions_.size()) + 1; }
  const std::vector<std::size_t>& actions() const { return actions_; }
  const std::vector<bool>& query_flags() const { return query_flags_; }
  std::optional<std::size_t> committed_arm() const { return committed_arm_; }
  double cumulative_cost() const { return cumulative_cost_; }
  double cumulative_pseudo_regret() const { return cumulative_pseudo_regret_; }
  long total_queries() const { return total_queries_; }
  double cumulative_mean_reward() const { return cumulative_mean_reward_; }

 private:
  const BernoulliBandit* bandit_;
  std::vector<std::size_t> actions_;
  std::vector<bool> query_flags_;
  std::optional<std::size_t> committed_arm_;
  double cumulative_cost_ = 0.0;
  double cumulative_pseudo_regret_ = 0.0;
  double cumulative_mean_reward_ = 0.0;
  long total_queries_ = 0;
};

/// Sum over recorded rounds of (mu* - mu_{A_t} + c Q_t), recomputed from the
/// trajectory.
double pseudo_regret(const BernoulliBandit& bandit, const BanditRunState& state);

constexpr int kDefaultMaxGapSamples = 256;

/// Monte Carlo estimate of E[max_j mu_j - mu_{i_hat}] under independent Beta
/// posteriors, where i_hat is the current posterior-mean leader.
double posterior_max_gap(std::span<const ArmBelief> beliefs, int samples, Rng& rng);

}  // namespace arl::bandit
