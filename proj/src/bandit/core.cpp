#include "arl/bandit/core.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace arl::bandit {

BernoulliBandit::BernoulliBandit(std::vector<double> means, int horizon, double query_cost)
    : means_(std::move(means)), horizon_(horizon), query_cost_(query_cost) {
  if (means_.empty()) throw std::invalid_argument("bandit needs at least one arm");
  for (double m : means_) {
    if (!(m >= 0.0 && m <= 1.0))
      throw std::invalid_argument("arm mean outside [0,1]: " + std::to_string(m));
  }
  if (horizon_ < 1) throw std::invalid_argument("horizon must be positive");
  if (!(query_cost_ >= 0.0)) throw std::invalid_argument("query cost must be nonnegative");
  best_mean_ = *std::max_element(means_.begin(), means_.end());
}

PullResult pull(const BernoulliBandit& bandit, std::size_t arm, bool query, Rng& rng) {
  if (arm >= bandit.num_arms())
    throw std::invalid_argument("arm index out of range: " + std::to_string(arm));
  const double u = sample_uniform(rng);
  PullResult result;
  result.reward = u < bandit.mean(arm) ? 1 : 0;
  if (query) result.observation = result.reward;
  return result;
}

std::vector<ArmBelief> uniform_beliefs(std::size_t num_arms, double prior_alpha,
                                       double prior_beta) {
  if (!(prior_alpha > 0.0 && prior_beta > 0.0))
    throw std::invalid_argument("Beta prior parameters must be positive");
  ArmBelief b;
  b.alpha = prior_alpha;
  b.beta = prior_beta;
  return std::vector<ArmBelief>(num_arms, b);
}

ArmBelief update_belief(ArmBelief belief, int observation) {
  belief.alpha += observation;
  belief.beta += 1 - observation;
  ++belief.observed_count;
  return belief;
}

std::size_t best_posterior_arm(std::span<const ArmBelief> beliefs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < beliefs.size(); ++i) {
    if (beliefs[i].mean() > beliefs[best].mean()) best = i;
  }
  return best;
}

BanditRunState::BanditRunState(const BernoulliBandit& bandit) : bandit_(&bandit) {
  actions_.reserve(static_cast<std::size_t>(bandit.horizon()));
  query_flags_.reserve(static_cast<std::size_t>(bandit.horizon()));
}

void BanditRunState::record(std::size_t arm, bool query) {
  if (arm >= bandit_->num_arms()) throw std::invalid_argument("arm index out of range");
  if (committed_arm_ && (query || arm != *committed_arm_))
    throw std::logic_error("committed run must keep its arm and stop querying");
  actions_.push_back(arm);
  query_flags_.push_back(query);
  const double cost = query ? bandit_->query_cost() : 0.0;
  cumulative_cost_ += cost;
  cumulative_pseudo_regret_ += bandit_->gap(arm) + cost;
  cumulative_mean_reward_ += bandit_->mean(arm);
  if (query) ++total_queries_;
}

void BanditRunState::commit(std::size_t arm) {
  if (committed_arm_ && *committed_arm_ != arm)
    throw std::logic_error("run is already committed to a different arm");
  committed_arm_ = arm;
}

double pseudo_regret(const BernoulliBandit& bandit, const BanditRunState& state) {
  double total = 0.0;
  const auto& actions = state.actions();
  const auto& flags = state.query_flags();
  for (std::size_t k = 0; k < actions.size(); ++k) {
    total += bandit.gap(actions[k]) + (flags[k] ? bandit.query_cost() : 0.0);
  }
  return total;
}

double posterior_max_gap(std::span<const ArmBelief> beliefs, int samples, Rng& rng) {
  if (samples < 1) throw std::invalid_argument("posterior_max_gap needs samples >= 1");
  if (beliefs.size() < 2) return 0.0;
  const std::size_t leader = best_posterior_arm(beliefs);
  const std::size_t k = beliefs.size();

  std::vector<std::gamma_distribution<double>> ga, gb;
  ga.reserve(k);
  gb.reserve(k);
  for (const auto& b : beliefs) {
    ga.emplace_back(b.alpha, 1.0);
    gb.emplace_back(b.beta, 1.0);
  }

  double total = 0.0;
  for (int s = 0; s < samples; ++s) {
    double best = 0.0;
    double at_leader = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double x = ga[i](rng);
      const double y = gb[i](rng);
      const double draw = x / (x + y);
      best = std::max(best, draw);
      if (i == leader) at_leader = draw;
    }
    total += best - at_leader;
  }
  return total / samples;
}

}  // namespace arl::bandit
