#include "arl/bandit/query_rules.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace arl::bandit {

long mcch_m_hat(std::span<const ArmBelief> beliefs) {
  if (beliefs.size() < 2) return 1;
  const double best = beliefs[best_posterior_arm(beliefs)].mean();
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& b : beliefs) {
    const double gap = best - b.mean();
    if (gap <= 0.0) continue;
    const double scaled = (static_cast<double>(b.observed_count) + 1.0) * gap;
    smallest = std::min(smallest, scaled * scaled);
  }
  if (!std::isfinite(smallest)) return 1;
  return std::max(1L, static_cast<long>(std::ceil(2.0 * smallest)));
}

bool mcch_criterion(double cost, long m_hat, double alpha, double estimated_regret) {
  return cost * static_cast<double>(m_hat) < alpha * estimated_regret;
}

bool mcch_should_query(std::span<const ArmBelief> beliefs, const McchConfig& config, int t,
                       int n, double cost, Rng& rng) {
  if (!(config.alpha > 0.0)) throw std::invalid_argument("MCCH alpha must be positive");
  if (cost == 0.0) return true;
  const int remaining = n - t + 1;
  if (remaining <= 0) return false;
  const double gap = posterior_max_gap(beliefs, config.mc_samples, rng);
  return mcch_criterion(cost, mcch_m_hat(beliefs), config.alpha, remaining * gap);
}

bool recip_t_should_query(int t, Rng& rng) {
  if (t < 1) throw std::invalid_argument("round index must be >= 1");
  return sample_uniform(rng) * t < 1.0;
}

bool dmed_stop_should_query(const DmedState& state) { return !state.narrowed_to_one; }

bool fixed_stop_should_query(int t, int stop_time) { return t <= stop_time; }

}  // namespace arl::bandit
