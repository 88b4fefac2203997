#include "arl/mdp/tabular_mdp.hpp"

#include <cmath>
#include <stdexcept>

namespace arl::mdp {

TabularMDP::TabularMDP(std::string name, std::size_t num_states, std::size_t num_actions,
                       RewardSiteKind site_kind, std::vector<std::vector<Transition>> transitions,
                       std::vector<double> true_means, int horizon, std::size_t start_state)
    : name_(std::move(name)),
      num_states_(num_states),
      num_actions_(num_actions),
      site_kind_(site_kind),
      transitions_(std::move(transitions)),
      true_means_(std::move(true_means)),
      horizon_(horizon),
      start_state_(start_state) {
  if (num_states_ == 0 || num_actions_ == 0)
    throw std::invalid_argument("MDP needs at least one state and one action");
  if (transitions_.size() != num_states_ * num_actions_)
    throw std::invalid_argument("transition table must have one row per (state, action)");
  for (const auto& row : transitions_) {
    double total = 0.0;
    for (const auto& tr : row) {
      if (tr.next >= num_states_ || tr.prob < 0.0)
        throw std::invalid_argument("invalid transition entry");
      total += tr.prob;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw std::invalid_argument("transition row does not sum to one");
  }
  const std::size_t sites =
      site_kind_ == RewardSiteKind::State ? num_states_ : num_states_ * num_actions_;
  if (true_means_.size() != sites)
    throw std::invalid_argument("every reward site needs a mean");
  if (horizon_ < 1) throw std::invalid_argument("horizon must be >= 1");
  if (start_state_ >= num_states_) throw std::invalid_argument("start state out of range");
}

TabularMDP TabularMDP::with_true_means(std::vector<double> means) const {
  return TabularMDP(name_, num_states_, num_actions_, site_kind_, transitions_, std::move(means),
                    horizon_, start_state_);
}

TabularMDP make_chain(std::size_t length) {
  if (length < 2) throw std::invalid_argument("chain length must be >= 2");
  std::vector<std::vector<Transition>> p(length * 2);
  for (std::size_t s = 0; s < length; ++s) {
    p[s * 2 + chain::kLeft] = {{s == 0 ? 0 : s - 1, 1.0}};
    p[s * 2 + chain::kRight] = {{s + 1 == length ? s : s + 1, 1.0}};
  }
  std::vector<double> means(length * 2, 0.0);
  means[(length - 1) * 2 + chain::kRight] = 1.0;
  return TabularMDP("chain" + std::to_string(length), length, 2, RewardSiteKind::StateAction,
                    std::move(p), std::move(means), static_cast<int>(length), 0);
}

TabularMDP make_long_y(std::size_t length) {
  if (length < 3) throw std::invalid_argument("long-Y length must be >= 3");
  const std::size_t stem = length - 2;
  const std::size_t fork = stem;
  const std::size_t up_terminal = fork + 1;
  const std::size_t down_terminal = fork + 2;
  const std::size_t states = down_terminal + 1;

  std::vector<std::vector<Transition>> p(states * 2);
  for (std::size_t s = 0; s < stem; ++s) {
    p[s * 2 + 0] = {{s + 1, 1.0}};
    p[s * 2 + 1] = {{s + 1, 1.0}};
  }
  p[fork * 2 + long_y::kDown] = {{down_terminal, 1.0}};
  p[fork * 2 + long_y::kUp] = {{up_terminal, 1.0}};
  for (std::size_t t : {up_terminal, down_terminal}) {
    p[t * 2 + 0] = {{t, 1.0}};
    p[t * 2 + 1] = {{t, 1.0}};
  }
  std::vector<double> means(states, 0.0);
  means[up_terminal] = 1.0;
  return TabularMDP("long-y", states, 2, RewardSiteKind::State, std::move(p), std::move(means),
                    static_cast<int>(length), 0);
}

TabularMDP make_gridworld() {
  constexpr std::size_t side = 4;
  std::vector<std::vector<Transition>> p(side * side * 4);
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) {
      const std::size_t s = r * side + c;
      p[s * 4 + grid::kUp] = {{(r == 0 ? r : r - 1) * side + c, 1.0}};
      p[s * 4 + grid::kDown] = {{(r + 1 == side ? r : r + 1) * side + c, 1.0}};
      p[s * 4 + grid::kLeft] = {{r * side + (c == 0 ? c : c - 1), 1.0}};
      p[s * 4 + grid::kRight] = {{r * side + (c + 1 == side ? c : c + 1), 1.0}};
    }
  }
  std::vector<double> means(side * side, 0.0);
  for (std::size_t i = 0; i < side; ++i) means[i * side + i] = static_cast<double>(i) / 3.0;
  return TabularMDP("grid4", side * side, 4, RewardSiteKind::State, std::move(p),
                    std::move(means), 8, 0);
}

const std::vector<std::string>& environment_names() {
  static const std::vector<std::string> names = {"chain10", "long-y", "grid4"};
  return names;
}

TabularMDP make_environment(std::string_view name) {
  if (name == "chain10") return make_chain(10);
  if (name == "long-y") return make_long_y(10);
  if (name == "grid4") return make_gridworld();
  throw std::invalid_argument("unknown environment: " + std::string(name));
}

}  // namespace arl::mdp
