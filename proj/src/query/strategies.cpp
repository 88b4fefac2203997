#include "arl/query/strategies.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "arl/mdp/planning.hpp"

namespace arl::query {

using mdp::evaluate_policy;
using mdp::plan_optimal;

QueryPlan QueryPlan::uniform(std::size_t num_sites, long n, std::span<const long> consumed) {
  QueryPlan plan;
  plan.quota.assign(num_sites, n);
  plan.consumed.assign(consumed.begin(), consumed.end());
  plan.consumed.resize(num_sites, 0);
  return plan;
}

bool QueryPlan::try_consume(std::size_t site) {
  if (consumed.at(site) >= quota.at(site)) return false;
  ++consumed[site];
  return true;
}

std::vector<long> default_candidates() { return {0, 1, 2, 4, 8, 16, 32}; }

FixedNStrategy::FixedNStrategy(long n) : n_(n) {
  if (n < 0) throw std::invalid_argument("fixed-n quota must be >= 0");
}

bool FixedNStrategy::should_query(std::size_t site, const RewardBelief& belief) {
  return belief.count(site) < n_;
}

BudgetStrategy::BudgetStrategy(long budget) : budget_(budget) {
  if (budget < 0) throw std::invalid_argument("query budget must be >= 0");
}

bool BudgetStrategy::should_query(std::size_t, const RewardBelief&) {
  if (used_ >= budget_) return false;
  ++used_;
  return true;
}

// ---------------------------------------------------------------------------

namespace {

void check_candidates(std::span<const long> candidates) {
  if (candidates.empty()) throw std::invalid_argument("candidate set must be nonempty");
  for (long n : candidates)
    if (n < 0) throw std::invalid_argument("candidate N must be >= 0");
}

std::vector<long> sorted(std::span<const long> candidates) {
  std::vector<long> out(candidates.begin(), candidates.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<double> sqr_scores(const TabularMDP& mdp, const RewardBelief& belief,
                               std::span<const long> candidates, long episodes, double cost,
                               int mc_envs, Rng& rng) {
  check_candidates(candidates);
  if (mc_envs < 1) throw std::invalid_argument("SQR needs mc_envs >= 1");
  std::vector<double> scores(candidates.size(), 0.0);
  if (episodes <= 0) return scores;

  for (int e = 0; e < mc_envs; ++e) {
    const TabularMDP sampled = mdp.with_true_means(belief.sample(rng));
    const std::uint64_t inner_seed = rng();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      Rng inner(inner_seed);
      RewardBelief sim_belief = belief;
      FixedNStrategy strategy(candidates[i]);
      double total = 0.0;
      for (long ep = 0; ep < episodes; ++ep) {
        strategy.begin_episode(sampled, sim_belief, episodes - ep, inner);
        const auto trace = mdp::psrl_episode(sampled, sim_belief, strategy, inner);
        total += trace.ret - cost * static_cast<double>(trace.queries);
      }
      scores[i] += total / mc_envs;
    }
  }
  return scores;
}

long sqr_choose_n(const TabularMDP& mdp, const RewardBelief& belief,
                  std::span<const long> candidates, long episodes, double cost, int mc_envs,
                  Rng& rng) {
  const std::vector<long> order = sorted(candidates);
  if (episodes <= 0) {
    check_candidates(candidates);
    return order.front();
  }
  const std::vector<double> scores = sqr_scores(mdp, belief, order, episodes, cost, mc_envs, rng);
  std::size_t best = 0;
  for (std::size_t i = 1; i < order.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  return order[best];
}

std::vector<double> asqr_scores(const TabularMDP& mdp, const RewardBelief& belief,
                                std::span<const long> candidates, long episodes, double cost,
                                std::span<const double> sampled) {
  check_candidates(candidates);
  if (sampled.size() != mdp.num_sites())
    throw std::invalid_argument("sampled environment must have one mean per site");
  std::vector<double> scores;
  scores.reserve(candidates.size());
  std::vector<double> hypothetical(mdp.num_sites());
  for (long n : candidates) {
    long extra_total = 0;
    for (std::size_t site = 0; site < mdp.num_sites(); ++site) {
      const long extra = std::max(0L, n - belief.count(site));
      const double tau = belief.precision(site);
      hypothetical[site] =
          (tau * belief.mean(site) + static_cast<double>(extra) * sampled[site]) / (tau + extra);
      extra_total += extra;
    }
    const auto plan = plan_optimal(mdp, hypothetical);
    const double value = evaluate_policy(mdp, sampled, plan.policy);
    scores.push_back(static_cast<double>(episodes) * value - cost * static_cast<double>(extra_total));
  }
  return scores;
}

long asqr_choose_n(const TabularMDP& mdp, const RewardBelief& belief,
                   std::span<const long> candidates, long episodes, double cost, Rng& rng) {
  const std::vector<long> order = sorted(candidates);
  check_candidates(order);
  const std::vector<double> sampled = belief.sample(rng);
  const std::vector<double> scores = asqr_scores(mdp, belief, order, episodes, cost, sampled);
  const auto extra = [&](long n) {
    long total = 0;
    for (std::size_t site = 0; site < mdp.num_sites(); ++site)
      total += std::max(0L, n - belief.count(site));
    return total;
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (scores[i] > scores[best] ||
        (scores[i] == scores[best] && extra(order[i]) > extra(order[best])))
      best = i;
  }
  return order[best];
}

QueryPlan asqr_in_loop(const TabularMDP& mdp, const RewardBelief& belief,
                       std::span<const long> candidates, long episodes_remaining, double cost,
                       Rng& rng) {
  if (episodes_remaining < 1) throw std::invalid_argument("ASQR in the loop needs E_t >= 1");
  const long n = asqr_choose_n(mdp, belief, candidates, episodes_remaining, cost, rng);
  return QueryPlan::uniform(mdp.num_sites(), n, belief.counts());
}

SqrStrategy::SqrStrategy(std::vector<long> candidates, double cost, int mc_envs)
    : candidates_(std::move(candidates)), cost_(cost), mc_envs_(mc_envs) {
  check_candidates(candidates_);
}

void SqrStrategy::begin_episode(const TabularMDP& mdp, const RewardBelief& belief,
                                long episodes_remaining, Rng& rng) {
  if (chosen_ < 0)
    chosen_ = sqr_choose_n(mdp, belief, candidates_, episodes_remaining, cost_, mc_envs_, rng);
}

bool SqrStrategy::should_query(std::size_t site, const RewardBelief& belief) {
  return belief.count(site) < chosen_;
}

AsqrStrategy::AsqrStrategy(std::vector<long> candidates, double cost, bool in_loop)
    : candidates_(std::move(candidates)), cost_(cost), in_loop_(in_loop) {
  check_candidates(candidates_);
}

void AsqrStrategy::begin_episode(const TabularMDP& mdp, const RewardBelief& belief,
                                 long episodes_remaining, Rng& rng) {
  if (current_ < 0 || in_loop_)
    current_ = asqr_choose_n(mdp, belief, candidates_, episodes_remaining, cost_, rng);
}

bool AsqrStrategy::should_query(std::size_t site, const RewardBelief& belief) {
  return belief.count(site) < current_;
}

// ---------------------------------------------------------------------------

namespace {

// Adds each site's clamped VOI for one sampled environment into `acc`.
void accumulate_voi(const TabularMDP& mdp, const RewardBelief& belief, VoiMode mode,
                    std::span<const double> sampled, std::span<const std::size_t> sites,
                    const mdp::Policy& greedy_ignorant, std::span<double> acc) {
  std::vector<double> table;
  if (mode == VoiMode::Greedy) {
    const double ignorant_value = evaluate_policy(mdp, sampled, greedy_ignorant);
    table = belief.means();
    for (std::size_t k = 0; k < sites.size(); ++k) {
      const std::size_t site = sites[k];
      const double saved = table[site];
      table[site] = sampled[site];
      const auto informed = plan_optimal(mdp, table);
      table[site] = saved;
      const double diff = evaluate_policy(mdp, sampled, informed.policy) - ignorant_value;
      acc[k] += std::max(0.0, diff);
    }
  } else {
    const auto informed = plan_optimal(mdp, sampled);
    const double informed_value = evaluate_policy(mdp, sampled, informed.policy);
    table.assign(sampled.begin(), sampled.end());
    for (std::size_t k = 0; k < sites.size(); ++k) {
      const std::size_t site = sites[k];
      table[site] = belief.mean(site);
      const auto ignorant = plan_optimal(mdp, table);
      table[site] = sampled[site];
      const double diff = informed_value - evaluate_policy(mdp, sampled, ignorant.policy);
      acc[k] += std::max(0.0, diff);
    }
  }
}

std::vector<double> voi_for_sites(const TabularMDP& mdp, const RewardBelief& belief,
                                  std::span<const std::size_t> sites, VoiMode mode, int mc_envs,
                                  Rng& rng) {
  if (mc_envs < 1) throw std::invalid_argument("VOI needs mc_envs >= 1");
  mdp::Policy greedy_ignorant;
  if (mode == VoiMode::Greedy) greedy_ignorant = plan_optimal(mdp, belief.means()).policy;
  std::vector<double> acc(sites.size(), 0.0);
  for (int e = 0; e < mc_envs; ++e) {
    const std::vector<double> sampled = belief.sample(rng);
    accumulate_voi(mdp, belief, mode, sampled, sites, greedy_ignorant, acc);
  }
  for (double& v : acc) v /= mc_envs;
  return acc;
}

}  // namespace

double voi_estimate(const TabularMDP& mdp, const RewardBelief& belief, std::size_t site,
                    VoiMode mode, int mc_envs, Rng& rng) {
  if (site >= mdp.num_sites()) throw std::invalid_argument("reward site out of range");
  const std::size_t sites[] = {site};
  return voi_for_sites(mdp, belief, sites, mode, mc_envs, rng).front();
}

std::vector<double> voi_estimates(const TabularMDP& mdp, const RewardBelief& belief, VoiMode mode,
                                  int mc_envs, Rng& rng) {
  std::vector<std::size_t> sites(mdp.num_sites());
  for (std::size_t i = 0; i < sites.size(); ++i) sites[i] = i;
  return voi_for_sites(mdp, belief, sites, mode, mc_envs, rng);
}

long voi_quota(double voi, long episodes, double cost, double k) {
  if (!(cost > 0.0)) throw std::invalid_argument("VOI quotas need a positive query cost");
  if (!(k > 0.0)) throw std::invalid_argument("VOI eagerness k must be positive");
  const double n = std::floor(k * static_cast<double>(episodes) * voi / cost);
  if (!(n > 0.0)) return 0;
  if (n >= static_cast<double>(std::numeric_limits<long>::max())) return std::numeric_limits<long>::max();
  return static_cast<long>(n);
}

QueryPlan voi_query_plan(const TabularMDP& mdp, const RewardBelief& belief, VoiMode mode,
                         long episodes, double cost, double k, int mc_envs, Rng& rng) {
  // Validate before spending any samples.
  voi_quota(0.0, episodes, cost, k);
  const std::vector<double> voi = voi_estimates(mdp, belief, mode, mc_envs, rng);
  QueryPlan plan = QueryPlan::uniform(mdp.num_sites(), 0, belief.counts());
  for (std::size_t site = 0; site < voi.size(); ++site)
    plan.quota[site] = voi_quota(voi[site], episodes, cost, k);
  return plan;
}

VoiStrategy::VoiStrategy(VoiMode mode, double cost, double k, int mc_envs)
    : mode_(mode), cost_(cost), k_(k), mc_envs_(mc_envs) {
  voi_quota(0.0, 1, cost, k);
}

void VoiStrategy::begin_episode(const TabularMDP& mdp, const RewardBelief& belief,
                                long episodes_remaining, Rng& rng) {
  plan_ = voi_query_plan(mdp, belief, mode_, episodes_remaining, cost_, k_, mc_envs_, rng);
}

bool VoiStrategy::should_query(std::size_t site, const RewardBelief&) {
  return plan_.try_consume(site);
}

// ---------------------------------------------------------------------------

namespace {

long parse_count(std::string_view text, std::string_view spec) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0)
    throw std::invalid_argument("bad count in strategy: " + std::string(spec));
  return value;
}

}  // namespace

const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> names = {"fixed-n:<N>", "budget:<B>", "never",
                                                 "sqr",         "asqr",       "asqr-loop",
                                                 "voi-greedy",  "voi-omniscient"};
  return names;
}

std::unique_ptr<QueryStrategy> make_query_strategy(std::string_view spec,
                                                   const StrategyParams& params) {
  if (spec.starts_with("fixed-n:"))
    return std::make_unique<FixedNStrategy>(parse_count(spec.substr(8), spec));
  if (spec.starts_with("budget:"))
    return std::make_unique<BudgetStrategy>(parse_count(spec.substr(7), spec));
  if (spec == "never") return std::make_unique<NeverQueryStrategy>();
  if (spec == "sqr")
    return std::make_unique<SqrStrategy>(params.candidates, params.cost, params.mc_envs);
  if (spec == "asqr") return std::make_unique<AsqrStrategy>(params.candidates, params.cost, false);
  if (spec == "asqr-loop")
    return std::make_unique<AsqrStrategy>(params.candidates, params.cost, true);
  if (spec == "voi-greedy")
    return std::make_unique<VoiStrategy>(VoiMode::Greedy, params.cost, params.k, params.mc_envs);
  if (spec == "voi-omniscient")
    return std::make_unique<VoiStrategy>(VoiMode::Omniscient, params.cost, params.k,
                                         params.mc_envs);
  throw std::invalid_argument("unknown query strategy: " + std::string(spec));
}

}  // namespace arl::query
