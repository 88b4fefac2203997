#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arl::mdp {

/// Whether rewards attach to states or to state-action pairs.
enum class RewardSiteKind { State, StateAction };

struct Transition {
  std::size_t next = 0;
  double prob = 1.0;
};

/// Episodic tabular MDP with a known transition kernel and unknown mean
/// rewards. The reward at step t is the mean of site(s_t, a_t).
class TabularMDP {
 public:
  TabularMDP(std::string name, std::size_t num_states, std::size_t num_actions,
             RewardSiteKind site_kind, std::vector<std::vector<Transition>> transitions,
             std::vector<double> true_means, int horizon, std::size_t start_state);

  const std::string& name() const { return name_; }
  std::size_t num_states() const { return num_states_; }
  std::size_t num_actions() const { return num_actions_; }
  RewardSiteKind site_kind() const { return site_kind_; }
  std::size_t num_sites() const { return true_means_.size(); }
  int horizon() const { return horizon_; }
  std::size_t start_state() const { return start_state_; }

  std::size_t site(std::size_t state, std::size_t action) const {
    return site_kind_ == RewardSiteKind::State ? state : state * num_actions_ + action;
  }

  std::span<const Transition> transitions(std::size_t state, std::size_t action) const {
    return transitions_[state * num_actions_ + action];
  }

  const std::vector<double>& true_means() const { return true_means_; }

  /// Same dynamics, different mean rewards. Used to simulate inside sampled
  /// environments.
  TabularMDP with_true_means(std::vector<double> means) const;

 private:
  std::string name_;
  std::size_t num_states_;
  std::size_t num_actions_;
  RewardSiteKind site_kind_;
  std::vector<std::vector<Transition>> transitions_;
  std::vector<double> true_means_;
  int horizon_;
  std::size_t start_state_;
};

namespace chain {
inline constexpr std::size_t kLeft = 0;
inline constexpr std::size_t kRight = 1;
}  // namespace chain

/// Deterministic chain, start at the left end, reward 1 only for taking
/// `right` in the rightmost state. Rewards are per state-action; H = length.
TabularMDP make_chain(std::size_t length = 10);

namespace long_y {
// `down` leads to the unrewarded terminal and is listed first, so the
// lowest-index tie-break does not favour the rewarded branch.
inline constexpr std::size_t kDown = 0;
inline constexpr std::size_t kUp = 1;
}  // namespace long_y

/// Stem of length-2 states, a fork, and two absorbing terminals (up: mean 1,
/// down: mean 0). Both actions move forward on the stem. Rewards are per
/// state; states are numbered stem 0..length-3, fork length-2, up terminal
/// length-1, down terminal length. H = length, so the terminal reward is
/// collected exactly once.
TabularMDP make_long_y(std::size_t length = 10);

namespace grid {
inline constexpr std::size_t kUp = 0;
inline constexpr std::size_t kDown = 1;
inline constexpr std::size_t kLeft = 2;
inline constexpr std::size_t kRight = 3;
}  // namespace grid

/// 4x4 grid, row-major states, moves clamped at walls. Diagonal cells carry
/// means 0, 1/3, 2/3, 1; start (0,0); H = 8.
TabularMDP make_gridworld();

/// Looks up `chain10`, `long-y` or `grid4`. Throws std::invalid_argument.
TabularMDP make_environment(std::string_view name);

const std::vector<std::string>& environment_names();

}  // namespace arl::mdp
