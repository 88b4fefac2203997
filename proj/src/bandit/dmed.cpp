#include "arl/bandit/dmed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace arl::bandit {

double bernoulli_kl(double p, double q) {
  constexpr double eps = 1e-12;
  p = std::clamp(p, eps, 1.0 - eps);
  q = std::clamp(q, eps, 1.0 - eps);
  return p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
}

DmedState::DmedState(std::size_t num_arms) : current_list(num_arms) {
  if (num_arms == 0) throw std::invalid_argument("DMED needs at least one arm");
  std::iota(current_list.begin(), current_list.end(), std::size_t{0});
}

std::vector<std::size_t> dmed_rebuild_list(std::span<const ArmBelief> beliefs, int t) {
  const std::size_t leader = best_posterior_arm(beliefs);
  const double best = beliefs[leader].mean();
  const double threshold = std::log(static_cast<double>(std::max(t, 1)));
  std::vector<std::size_t> list;
  for (std::size_t j = 0; j < beliefs.size(); ++j) {
    const double weight =
        static_cast<double>(beliefs[j].observed_count) * bernoulli_kl(beliefs[j].mean(), best);
    if (j == leader || weight < threshold) list.push_back(j);
  }
  return list;
}

std::size_t dmed_next_action(DmedState& state, std::span<const ArmBelief> beliefs, int t) {
  if (t < 1) throw std::invalid_argument("round index must be >= 1");
  if (state.cursor >= state.current_list.size()) {
    state.current_list = dmed_rebuild_list(beliefs, t);
    state.cursor = 0;
    if (state.current_list.size() == 1) state.narrowed_to_one = true;
  }
  return state.current_list[state.cursor++];
}

}  // namespace arl::bandit
