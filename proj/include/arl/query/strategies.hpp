#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arl/mdp/psrl.hpp"
#include "arl/mdp/reward_belief.hpp"
#include "arl/mdp/tabular_mdp.hpp"
#include "arl/rng.hpp"

namespace arl::query {

using mdp::QueryStrategy;
using mdp::RewardBelief;
using mdp::TabularMDP;

/// Per-site query quotas N(s,a) plus how many queries each site has had.
/// A site is queried only while consumed < quota.
struct QueryPlan {
  std::vector<long> quota;
  std::vector<long> consumed;

  static QueryPlan uniform(std::size_t num_sites, long n, std::span<const long> consumed);

  /// Consumes one query at `site` if its quota allows it.
  bool try_consume(std::size_t site);
};

/// {0} plus powers of two up to 32.
std::vector<long> default_candidates();

// ---------------------------------------------------------------------------
// Baselines

/// Queries a site on each of its first N visits.
class FixedNStrategy final : public QueryStrategy {
 public:
  explicit FixedNStrategy(long n);
  bool should_query(std::size_t site, const RewardBelief& belief) override;
  long n() const { return n_; }

 private:
  long n_;
};

/// Queries every visit until B queries have been made in total, counted
/// across episodes.
class BudgetStrategy final : public QueryStrategy {
 public:
  explicit BudgetStrategy(long budget);
  bool should_query(std::size_t site, const RewardBelief& belief) override;
  long used() const { return used_; }

 private:
  long budget_;
  long used_ = 0;
};

class NeverQueryStrategy final : public QueryStrategy {
 public:
  bool should_query(std::size_t, const RewardBelief&) override { return false; }
};

// ---------------------------------------------------------------------------
// Simulated query rollouts

/// Scores each candidate N by simulating the remaining E episodes of PSRL with
/// a fixed-N strategy in `mc_envs` environments sampled from the posterior,
/// starting from the current belief. The same sampled environments and inner
/// random streams are used for every candidate. Returns the mean score
/// (return - c * queries) per candidate.
std::vector<double> sqr_scores(const TabularMDP& mdp, const RewardBelief& belief,
                               std::span<const long> candidates, long episodes, double cost,
                               int mc_envs, Rng& rng);

/// Highest-scoring candidate from sqr_scores; ties and E = 0 go to the
/// smallest candidate.
long sqr_choose_n(const TabularMDP& mdp, const RewardBelief& belief,
                  std::span<const long> candidates, long episodes, double cost, int mc_envs,
                  Rng& rng);

/// ASQR scores in a given environment `sampled`: for each N, every site gets
/// max(0, N - consumed) hypothetical observations equal to its mean in
/// `sampled`; the plan on the resulting posterior means is scored as
/// E * V_sampled(plan) - c * (hypothetical observations).
std::vector<double> asqr_scores(const TabularMDP& mdp, const RewardBelief& belief,
                                std::span<const long> candidates, long episodes, double cost,
                                std::span<const double> sampled);

/// Samples one environment from the posterior and returns the best ASQR
/// candidate. Ties go to the larger N, unless it adds no hypothetical
/// observations over the smaller one (the two plans are then identical).
long asqr_choose_n(const TabularMDP& mdp, const RewardBelief& belief,
                   std::span<const long> candidates, long episodes, double cost, Rng& rng);

/// ASQR with E = episodes remaining, as a uniform plan over all sites.
QueryPlan asqr_in_loop(const TabularMDP& mdp, const RewardBelief& belief,
                       std::span<const long> candidates, long episodes_remaining, double cost,
                       Rng& rng);

/// Picks N with SQR before the first episode, then behaves as fixed-N.
class SqrStrategy final : public QueryStrategy {
 public:
  SqrStrategy(std::vector<long> candidates, double cost, int mc_envs);
  void begin_episode(const TabularMDP& mdp, const RewardBelief& belief, long episodes_remaining,
                     Rng& rng) override;
  bool should_query(std::size_t site, const RewardBelief& belief) override;
  long chosen_n() const { return chosen_; }

 private:
  std::vector<long> candidates_;
  double cost_;
  int mc_envs_;
  long chosen_ = -1;
};

/// Picks N with ASQR once (first episode) or before every episode.
class AsqrStrategy final : public QueryStrategy {
 public:
  AsqrStrategy(std::vector<long> candidates, double cost, bool in_loop);
  void begin_episode(const TabularMDP& mdp, const RewardBelief& belief, long episodes_remaining,
                     Rng& rng) override;
  bool should_query(std::size_t site, const RewardBelief& belief) override;
  long current_n() const { return current_; }

 private:
  std::vector<long> candidates_;
  double cost_;
  bool in_loop_;
  long current_ = -1;
};

// ---------------------------------------------------------------------------
// Value of information

enum class VoiMode { Greedy, Omniscient };

/// E_M[V_M(pi_inf) - V_M(pi_ign)] for one site over `mc_envs` posterior
/// samples M, each difference clamped at zero.
///   greedy:     pi_ign plans on the posterior means; pi_inf on the posterior
///               means with the site's entry replaced by M's.
///   omniscient: pi_ign plans on M with the site's entry replaced by the
///               posterior mean; pi_inf plans on M.
double voi_estimate(const TabularMDP& mdp, const RewardBelief& belief, std::size_t site,
                    VoiMode mode, int mc_envs, Rng& rng);

/// voi_estimate for every site, sharing the sampled environments.
std::vector<double> voi_estimates(const TabularMDP& mdp, const RewardBelief& belief, VoiMode mode,
                                  int mc_envs, Rng& rng);

/// floor(k * E * VOI / c) per site. Throws std::invalid_argument for c <= 0
/// or k <= 0.
long voi_quota(double voi, long episodes, double cost, double k);

QueryPlan voi_query_plan(const TabularMDP& mdp, const RewardBelief& belief, VoiMode mode,
                         long episodes, double cost, double k, int mc_envs, Rng& rng);

/// Recomputes VOI quotas before every episode.
class VoiStrategy final : public QueryStrategy {
 public:
  VoiStrategy(VoiMode mode, double cost, double k, int mc_envs);
  void begin_episode(const TabularMDP& mdp, const RewardBelief& belief, long episodes_remaining,
                     Rng& rng) override;
  bool should_query(std::size_t site, const RewardBelief& belief) override;
  const QueryPlan& plan() const { return plan_; }

 private:
  VoiMode mode_;
  double cost_;
  double k_;
  int mc_envs_;
  QueryPlan plan_;
};

// ---------------------------------------------------------------------------

struct StrategyParams {
  double cost = 1.0;
  double k = 1.0;
  int mc_envs = 1;
  std::vector<long> candidates = default_candidates();
};

/// Parses a CLI strategy name: fixed-n:<N>, budget:<B>, never, sqr, asqr,
/// asqr-loop, voi-greedy, voi-omniscient. Throws std::invalid_argument.
std::unique_ptr<QueryStrategy> make_query_strategy(std::string_view spec,
                                                   const StrategyParams& params);

const std::vector<std::string>& strategy_names();

}  // namespace arl::query
