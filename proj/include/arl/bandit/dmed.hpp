#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "arl/bandit/core.hpp"

namespace arl::bandit {

/// Bernoulli KL divergence d(p, q), with both arguments clamped into (0,1).
double bernoulli_kl(double p, double q);

/// Sweep-list state of DMED. The agent plays every arm of `current_list` once
/// per sweep, then rebuilds the list from the posterior.
struct DmedState {
  explicit DmedState(std::size_t num_arms);

  std::vector<std::size_t> current_list;
  std::size_t cursor = 0;
  // Set once a rebuild has produced a single-arm list. Never cleared.
  bool narrowed_to_one = false;
};

/// { j : T_j d(mu_j, mu*) < ln t } plus the posterior leader, sorted. T_j is
/// the number of observed rewards of arm j.
std::vector<std::size_t> dmed_rebuild_list(std::span<const ArmBelief> beliefs, int t);

/// Next arm for round t. Rebuilds the list when the current sweep is done.
std::size_t dmed_next_action(DmedState& state, std::span<const ArmBelief> beliefs, int t);

}  // namespace arl::bandit
