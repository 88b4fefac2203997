#pragma once

#include <span>

#include "arl/bandit/core.hpp"
#include "arl/bandit/dmed.hpp"

namespace arl::bandit {

// Per-round query rules. Each returns whether round t should pay for an
// observation. Policies built on top of them latch into a commit once a rule
// first says no (except the 1/t rule, which is memoryless).

struct McchConfig {
  double alpha = 1.0;
  int mc_samples = kDefaultMaxGapSamples;
};

/// Estimated number of consecutive queries needed to move the runner-up's
/// posterior mean onto the leader's: max{1, ceil(2 min_i ((T_i+1) gap_i)^2)},
/// minimized over arms with a strictly positive posterior gap.
long mcch_m_hat(std::span<const ArmBelief> beliefs);

/// c * m_hat < alpha * estimated_regret.
bool mcch_criterion(double cost, long m_hat, double alpha, double estimated_regret);

/// Mind-changing cost heuristic. The estimated regret of committing now is
/// (n - t + 1) * posterior_max_gap. A zero cost short-circuits to true without
/// drawing from `rng`.
bool mcch_should_query(std::span<const ArmBelief> beliefs, const McchConfig& config, int t,
                       int n, double cost, Rng& rng);

/// True with probability 1/t.
bool recip_t_should_query(int t, Rng& rng);

/// True until a DMED rebuild has left a single arm in the list.
bool dmed_stop_should_query(const DmedState& state);

/// True iff t <= stop_time.
bool fixed_stop_should_query(int t, int stop_time);

}  // namespace arl::bandit
