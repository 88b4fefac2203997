#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "arl/mdp/tabular_mdp.hpp"

namespace arl::mdp {

// Time steps are 0-based here: t = 0 is the first step of an episode and
// t = H is the (terminal) point after the last step.

/// Nonstationary deterministic policy, one action per (t < H, state).
class Policy {
 public:
  Policy() = default;
  Policy(int horizon, std::size_t num_states, std::size_t fill_action = 0)
      : horizon_(horizon), num_states_(num_states),
        actions_(static_cast<std::size_t>(horizon) * num_states, fill_action) {}

  int horizon() const { return horizon_; }
  std::size_t num_states() const { return num_states_; }
  std::size_t action(int t, std::size_t s) const {
    return actions_[static_cast<std::size_t>(t) * num_states_ + s];
  }
  void set(int t, std::size_t s, std::size_t a) {
    actions_[static_cast<std::size_t>(t) * num_states_ + s] = a;
  }

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  int horizon_ = 0;
  std::size_t num_states_ = 0;
  std::vector<std::size_t> actions_;
};

/// Expected remaining return V(t, s) for t = 0..H; V(H, .) = 0.
class ValueTable {
 public:
  ValueTable() = default;
  ValueTable(int horizon, std::size_t num_states)
      : num_states_(num_states),
        values_(static_cast<std::size_t>(horizon + 1) * num_states, 0.0) {}

  double at(int t, std::size_t s) const {
    return values_[static_cast<std::size_t>(t) * num_states_ + s];
  }
  double& at(int t, std::size_t s) { return values_[static_cast<std::size_t>(t) * num_states_ + s]; }

 private:
  std::size_t num_states_ = 0;
  std::vector<double> values_;
};

struct PlanResult {
  Policy policy;
  ValueTable values;
  double start_value = 0.0;
};

/// Finite-horizon backward induction on the given reward table (one entry per
/// site). Ties go to the lowest action index.
PlanResult plan_optimal(const TabularMDP& mdp, std::span<const double> rewards, int horizon);
PlanResult plan_optimal(const TabularMDP& mdp, std::span<const double> rewards);

/// Exact expected return of `policy` from the start state, by propagating
/// the state distribution forward.
double evaluate_policy(const TabularMDP& mdp, std::span<const double> rewards,
                       const Policy& policy);

}  // namespace arl::mdp
