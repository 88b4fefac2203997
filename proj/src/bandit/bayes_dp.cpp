#include "arl/bandit/bayes_dp.hpp"

#include <array>
#include <string>

namespace arl::bandit {

namespace {
// Strict improvement needed to switch away from an earlier (preferred) option.
constexpr double kTieTolerance = 1e-12;
}  // namespace

BayesOptimalPolicy BayesOptimalPolicy::solve(std::size_t num_arms, int horizon, double cost,
                                             BetaPrior prior) {
  if (num_arms < 1 || horizon < 1) throw std::invalid_argument("need K >= 1 and n >= 1");
  if (num_arms > kDpMaxArms || horizon > kDpMaxHorizon)
    throw ResourceLimitError("Bayes-optimal DP limited to K <= " + std::to_string(kDpMaxArms) +
                             " and n <= " + std::to_string(kDpMaxHorizon) + " (got K=" +
                             std::to_string(num_arms) + ", n=" + std::to_string(horizon) + ")");
  if (!(cost >= 0.0)) throw std::invalid_argument("query cost must be nonnegative");
  if (!(prior.alpha > 0.0 && prior.beta > 0.0))
    throw std::invalid_argument("Beta prior parameters must be positive");

  BayesOptimalPolicy policy(num_arms, horizon, cost, prior);
  std::array<int, 2 * kDpMaxArms> counts{};
  policy.value_ = policy.solve_state(1, counts.data());
  return policy;
}

std::uint64_t BayesOptimalPolicy::key(int t, std::span<const int> successes,
                                      std::span<const int> failures) {
  std::uint64_t k = static_cast<std::uint64_t>(t);
  for (std::size_t i = 0; i < successes.size(); ++i) {
    k = (k << 8) | static_cast<std::uint64_t>(successes[i]);
    k = (k << 8) | static_cast<std::uint64_t>(failures[i]);
  }
  return k;
}

// counts layout: [s_0, f_0, s_1, f_1, ...]
double BayesOptimalPolicy::solve_state(int t, int* counts) {
  if (t > horizon_) return 0.0;

  std::array<int, kDpMaxArms> s{}, f{};
  for (std::size_t i = 0; i < num_arms_; ++i) {
    s[i] = counts[2 * i];
    f[i] = counts[2 * i + 1];
  }
  const std::span<const int> ss(s.data(), num_arms_), fs(f.data(), num_arms_);
  const std::uint64_t k = key(t, ss, fs);
  if (auto it = table_.find(k); it != table_.end()) return it->second.value;

  const double skip_future = solve_state(t + 1, counts);
  Entry best{-1e300, {}};
  // Every skip option first so that ties resolve to not querying.
  for (std::size_t arm = 0; arm < num_arms_; ++arm) {
    const double mean = (prior_.alpha + s[arm]) / (prior_.alpha + prior_.beta + s[arm] + f[arm]);
    const double v = mean + skip_future;
    if (v > best.value + kTieTolerance) best = {v, {arm, false}};
  }
  for (std::size_t arm = 0; arm < num_arms_; ++arm) {
    const double mean = (prior_.alpha + s[arm]) / (prior_.alpha + prior_.beta + s[arm] + f[arm]);
    ++counts[2 * arm];
    const double on_success = solve_state(t + 1, counts);
    --counts[2 * arm];
    ++counts[2 * arm + 1];
    const double on_failure = solve_state(t + 1, counts);
    --counts[2 * arm + 1];
    const double v = mean - cost_ + mean * on_success + (1.0 - mean) * on_failure;
    if (v > best.value + kTieTolerance) best = {v, {arm, true}};
  }
  table_.emplace(k, best);
  return best.value;
}

DpAction BayesOptimalPolicy::action(int t, std::span<const int> successes,
                                    std::span<const int> failures) const {
  if (successes.size() != num_arms_ || failures.size() != num_arms_)
    throw std::invalid_argument("belief counts must have one entry per arm");
  auto it = table_.find(key(t, successes, failures));
  if (it == table_.end()) throw std::out_of_range("belief state not reachable in the DP table");
  return it->second.action;
}

}  // namespace arl::bandit
