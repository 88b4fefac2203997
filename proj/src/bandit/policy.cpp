#include "arl/bandit/policy.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "arl/bandit/bayes_dp.hpp"
#include "arl/bandit/dmed.hpp"
#include "arl/bandit/knowledge_gradient.hpp"
#include "arl/bandit/query_rules.hpp"

namespace arl::bandit {

namespace {

// Explores until explore() declines once, then plays the posterior leader
// without querying for the rest of the run.
class LatchedPolicy : public BanditPolicy {
 public:
  BanditDecision decide(int t, std::span<const ArmBelief> beliefs, Rng& rng) final {
    if (committed_) return {*committed_, false, false};
    if (auto d = explore(t, beliefs, rng)) return *d;
    committed_ = best_posterior_arm(beliefs);
    return {*committed_, false, true};
  }

 protected:
  virtual std::optional<BanditDecision> explore(int t, std::span<const ArmBelief> beliefs,
                                                Rng& rng) = 0;

 private:
  std::optional<std::size_t> committed_;
};

class AlwaysQueryPolicy final : public BanditPolicy {
 public:
  explicit AlwaysQueryPolicy(std::size_t k) : dmed_(k) {}
  BanditDecision decide(int t, std::span<const ArmBelief> beliefs, Rng&) override {
    return {dmed_next_action(dmed_, beliefs, t), true, false};
  }

 private:
  DmedState dmed_;
};

class NeverQueryPolicy final : public LatchedPolicy {
 protected:
  std::optional<BanditDecision> explore(int, std::span<const ArmBelief>, Rng&) override {
    return std::nullopt;
  }
};

class McchPolicy final : public LatchedPolicy {
 public:
  McchPolicy(std::size_t k, int horizon, double cost, McchConfig config)
      : dmed_(k), horizon_(horizon), cost_(cost), config_(config) {}

 protected:
  std::optional<BanditDecision> explore(int t, std::span<const ArmBelief> beliefs,
                                        Rng& rng) override {
    if (!mcch_should_query(beliefs, config_, t, horizon_, cost_, rng)) return std::nullopt;
    return BanditDecision{dmed_next_action(dmed_, beliefs, t), true, false};
  }

 private:
  DmedState dmed_;
  int horizon_;
  double cost_;
  McchConfig config_;
};

class FixedStopPolicy final : public LatchedPolicy {
 public:
  FixedStopPolicy(std::size_t k, int stop_time) : dmed_(k), stop_time_(stop_time) {
    if (stop_time < 0) throw std::invalid_argument("stopping time must be >= 0");
  }

 protected:
  std::optional<BanditDecision> explore(int t, std::span<const ArmBelief> beliefs,
                                        Rng&) override {
    if (!fixed_stop_should_query(t, stop_time_)) return std::nullopt;
    return BanditDecision{dmed_next_action(dmed_, beliefs, t), true, false};
  }

 private:
  DmedState dmed_;
  int stop_time_;
};

class DmedStopPolicy final : public LatchedPolicy {
 public:
  explicit DmedStopPolicy(std::size_t k) : dmed_(k) {}

 protected:
  std::optional<BanditDecision> explore(int t, std::span<const ArmBelief> beliefs,
                                        Rng&) override {
    const std::size_t arm = dmed_next_action(dmed_, beliefs, t);
    if (!dmed_stop_should_query(dmed_)) return std::nullopt;
    return BanditDecision{arm, true, false};
  }

 private:
  DmedState dmed_;
};

class KnowledgeGradientPolicy final : public LatchedPolicy {
 public:
  KnowledgeGradientPolicy(int horizon, double cost) : horizon_(horizon), cost_(cost) {}

 protected:
  std::optional<BanditDecision> explore(int t, std::span<const ArmBelief> beliefs,
                                        Rng&) override {
    const auto arm = kg_should_query(kg_belief_from(beliefs), t, horizon_, cost_);
    if (!arm) return std::nullopt;
    return BanditDecision{*arm, true, false};
  }

 private:
  int horizon_;
  double cost_;
};

class RecipTPolicy final : public BanditPolicy {
 public:
  explicit RecipTPolicy(std::size_t k) : dmed_(k) {}
  BanditDecision decide(int t, std::span<const ArmBelief> beliefs, Rng& rng) override {
    const std::size_t arm = dmed_next_action(dmed_, beliefs, t);
    return {arm, recip_t_should_query(t, rng), false};
  }

 private:
  DmedState dmed_;
};

class BayesDpPolicy final : public BanditPolicy {
 public:
  BayesDpPolicy(std::size_t k, int horizon, double cost)
      : dp_(BayesOptimalPolicy::solve(k, horizon, cost)) {}

  BanditDecision decide(int t, std::span<const ArmBelief> beliefs, Rng&) override {
    std::vector<int> s, f;
    for (const auto& b : beliefs) {
      s.push_back(static_cast<int>(std::lround(b.alpha - 1.0)));
      f.push_back(static_cast<int>(std::lround(b.beta - 1.0)));
    }
    const DpAction a = dp_.action(t, s, f);
    return {a.arm, a.query, false};
  }

 private:
  BayesOptimalPolicy dp_;
};

}  // namespace

const std::vector<std::string>& bandit_policy_names() {
  static const std::vector<std::string> names = {"mcch",       "kg",          "recip-t",
                                                 "dmed-stop",  "fixed-stop",  "never-query",
                                                 "always-query", "bayes-dp"};
  return names;
}

std::unique_ptr<BanditPolicy> make_bandit_policy(std::string_view name, const PolicyParams& params,
                                                 std::size_t num_arms, int horizon, double cost) {
  if (name == "mcch")
    return std::make_unique<McchPolicy>(num_arms, horizon, cost,
                                        McchConfig{params.alpha, params.mc_samples});
  if (name == "kg") return std::make_unique<KnowledgeGradientPolicy>(horizon, cost);
  if (name == "recip-t") return std::make_unique<RecipTPolicy>(num_arms);
  if (name == "dmed-stop") return std::make_unique<DmedStopPolicy>(num_arms);
  if (name == "fixed-stop") return std::make_unique<FixedStopPolicy>(num_arms, params.stop_time);
  if (name == "never-query") return std::make_unique<NeverQueryPolicy>();
  if (name == "always-query") return std::make_unique<AlwaysQueryPolicy>(num_arms);
  if (name == "bayes-dp") return std::make_unique<BayesDpPolicy>(num_arms, horizon, cost);
  throw std::invalid_argument("unknown bandit policy: " + std::string(name));
}

BanditRunResult run_bandit(const BernoulliBandit& bandit, BanditPolicy& policy, Rng& env_rng,
                           Rng& policy_rng) {
  BanditRunResult result{BanditRunState(bandit), uniform_beliefs(bandit.num_arms())};
  for (int t = 1; t <= bandit.horizon(); ++t) {
    const BanditDecision d = policy.decide(t, result.beliefs, policy_rng);
    if (d.commit) result.state.commit(d.arm);
    const PullResult pr = pull(bandit, d.arm, d.query, env_rng);
    auto& belief = result.beliefs[d.arm];
    ++belief.pulls;
    if (pr.observation) belief = update_belief(belief, *pr.observation);
    result.state.record(d.arm, d.query);
  }
  return result;
}

}  // namespace arl::bandit
