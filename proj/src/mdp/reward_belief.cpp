#include "arl/mdp/reward_belief.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace arl::mdp {

RewardBelief::RewardBelief(std::size_t num_sites) : means_(num_sites, 0.0), counts_(num_sites, 0) {}

long RewardBelief::total_count() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0L);
}

void RewardBelief::observe(std::size_t site, double reward) {
  if (site >= means_.size()) throw std::invalid_argument("reward site out of range");
  const double tau = precision(site);
  means_[site] = (tau * means_[site] + reward) / (tau + 1.0);
  ++counts_[site];
}

std::vector<double> RewardBelief::sample(Rng& rng) const {
  std::vector<double> out(means_.size());
  for (std::size_t i = 0; i < means_.size(); ++i) {
    out[i] = means_[i] + sample_standard_normal(rng) / std::sqrt(precision(i));
  }
  return out;
}

}  // namespace arl::mdp
