#include "arl/mdp/psrl.hpp"

#include <stdexcept>

namespace arl::mdp {

StepResult step(const TabularMDP& mdp, RewardBelief& belief, std::size_t s, std::size_t a,
                bool query, Rng& rng) {
  if (s >= mdp.num_states() || a >= mdp.num_actions())
    throw std::invalid_argument("state or action out of range");
  StepResult out;
  out.entry.state = s;
  out.entry.action = a;
  out.entry.site = mdp.site(s, a);
  out.entry.queried = query;
  out.entry.true_mean = mdp.true_means()[out.entry.site];
  if (query) {
    const double r = out.entry.true_mean + sample_standard_normal(rng);
    out.entry.observed = r;
    belief.observe(out.entry.site, r);
  }

  const auto successors = mdp.transitions(s, a);
  if (successors.size() == 1) {
    out.next_state = successors.front().next;
  } else {
    double u = sample_uniform(rng);
    out.next_state = successors.back().next;
    for (const auto& tr : successors) {
      if (u < tr.prob) {
        out.next_state = tr.next;
        break;
      }
      u -= tr.prob;
    }
  }
  return out;
}

EpisodeTrace psrl_episode(const TabularMDP& mdp, RewardBelief& belief, QueryStrategy& strategy,
                          Rng& rng) {
  const std::vector<double> sampled = belief.sample(rng);
  const PlanResult plan = plan_optimal(mdp, sampled);

  EpisodeTrace trace;
  trace.entries.reserve(static_cast<std::size_t>(mdp.horizon()));
  std::size_t s = mdp.start_state();
  for (int t = 0; t < mdp.horizon(); ++t) {
    const std::size_t a = plan.policy.action(t, s);
    const bool query = strategy.should_query(mdp.site(s, a), belief);
    StepResult r = step(mdp, belief, s, a, query, rng);
    trace.ret += r.entry.true_mean;
    if (r.entry.queried) ++trace.queries;
    trace.entries.push_back(r.entry);
    s = r.next_state;
  }
  return trace;
}

}  // namespace arl::mdp
