#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "arl/mdp/planning.hpp"
#include "arl/mdp/reward_belief.hpp"
#include "arl/mdp/tabular_mdp.hpp"
#include "arl/rng.hpp"

namespace arl::mdp {

/// Decides, per visited reward site, whether to pay for an observation.
class QueryStrategy {
 public:
  virtual ~QueryStrategy() = default;

  /// Called once before every episode. `episodes_remaining` counts the
  /// episode about to start.
  virtual void begin_episode(const TabularMDP& mdp, const RewardBelief& belief,
                             long episodes_remaining, Rng& rng) {
    (void)mdp, (void)belief, (void)episodes_remaining, (void)rng;
  }

  virtual bool should_query(std::size_t site, const RewardBelief& belief) = 0;
};

struct TraceEntry {
  std::size_t state = 0;
  std::size_t action = 0;
  std::size_t site = 0;
  bool queried = false;
  std::optional<double> observed;
  double true_mean = 0.0;
};

struct EpisodeTrace {
  std::vector<TraceEntry> entries;
  // Sum of true mean rewards along the trace; independent of querying.
  double ret = 0.0;
  long queries = 0;
};

struct StepResult {
  std::size_t next_state = 0;
  TraceEntry entry;
};

/// Takes action a in state s. On a query, draws r ~ N(true mean, 1) and
/// updates `belief`; without a query `belief` is untouched.
StepResult step(const TabularMDP& mdp, RewardBelief& belief, std::size_t s, std::size_t a,
                bool query, Rng& rng);

/// One PSRL episode: sample a reward table from the posterior, plan on it,
/// and roll the plan out for H steps, asking `strategy` at every step.
EpisodeTrace psrl_episode(const TabularMDP& mdp, RewardBelief& belief, QueryStrategy& strategy,
                          Rng& rng);

}  // namespace arl::mdp
