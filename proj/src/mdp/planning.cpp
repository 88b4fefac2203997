#include "arl/mdp/planning.hpp"

#include <algorithm>
#include <stdexcept>

namespace arl::mdp {

PlanResult plan_optimal(const TabularMDP& mdp, std::span<const double> rewards, int horizon) {
  if (rewards.size() != mdp.num_sites())
    throw std::invalid_argument("reward table must have one entry per site");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  const std::size_t S = mdp.num_states();
  const std::size_t A = mdp.num_actions();

  PlanResult out{Policy(horizon, S), ValueTable(horizon, S), 0.0};
  for (int t = horizon - 1; t >= 0; --t) {
    for (std::size_t s = 0; s < S; ++s) {
      double best = 0.0;
      std::size_t best_a = 0;
      for (std::size_t a = 0; a < A; ++a) {
        double q = rewards[mdp.site(s, a)];
        for (const auto& tr : mdp.transitions(s, a)) q += tr.prob * out.values.at(t + 1, tr.next);
        if (a == 0 || q > best) {
          best = q;
          best_a = a;
        }
      }
      out.values.at(t, s) = best;
      out.policy.set(t, s, best_a);
    }
  }
  out.start_value = out.values.at(0, mdp.start_state());
  return out;
}

PlanResult plan_optimal(const TabularMDP& mdp, std::span<const double> rewards) {
  return plan_optimal(mdp, rewards, mdp.horizon());
}

double evaluate_policy(const TabularMDP& mdp, std::span<const double> rewards,
                       const Policy& policy) {
  if (rewards.size() != mdp.num_sites())
    throw std::invalid_argument("reward table must have one entry per site");
  if (policy.num_states() != mdp.num_states())
    throw std::invalid_argument("policy does not match the MDP");
  const std::size_t S = mdp.num_states();
  std::vector<double> dist(S, 0.0), next(S, 0.0);
  dist[mdp.start_state()] = 1.0;
  double total = 0.0;
  for (int t = 0; t < policy.horizon(); ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t s = 0; s < S; ++s) {
      if (dist[s] == 0.0) continue;
      const std::size_t a = policy.action(t, s);
      total += dist[s] * rewards[mdp.site(s, a)];
      for (const auto& tr : mdp.transitions(s, a)) next[tr.next] += dist[s] * tr.prob;
    }
    dist.swap(next);
  }
  return total;
}

}  // namespace arl::mdp
