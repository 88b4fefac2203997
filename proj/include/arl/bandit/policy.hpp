#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arl/bandit/core.hpp"

namespace arl::bandit {

struct BanditDecision {
  std::size_t arm = 0;
  bool query = false;
  // Set on the round a policy stops querying for good.
  bool commit = false;
};

/// A per-run active bandit policy. Stateful; one instance per run.
class BanditPolicy {
 public:
  virtual ~BanditPolicy() = default;
  virtual BanditDecision decide(int t, std::span<const ArmBelief> beliefs, Rng& rng) = 0;
};

struct PolicyParams {
  double alpha = 1.0;
  int mc_samples = kDefaultMaxGapSamples;
  int stop_time = 0;
};

/// Stable CLI names: mcch, kg, recip-t, dmed-stop, fixed-stop, never-query,
/// always-query, bayes-dp.
const std::vector<std::string>& bandit_policy_names();

/// Throws std::invalid_argument for unknown names and ResourceLimitError when
/// bayes-dp is asked for a problem beyond its limits.
std::unique_ptr<BanditPolicy> make_bandit_policy(std::string_view name, const PolicyParams& params,
                                                 std::size_t num_arms, int horizon, double cost);

struct BanditRunResult {
  BanditRunState state;
  std::vector<ArmBelief> beliefs;
};

/// Plays one full run. Rewards come from `env_rng` (one draw per round) and
/// all policy randomness from `policy_rng`.
BanditRunResult run_bandit(const BernoulliBandit& bandit, BanditPolicy& policy, Rng& env_rng,
                           Rng& policy_rng);

}  // namespace arl::bandit
