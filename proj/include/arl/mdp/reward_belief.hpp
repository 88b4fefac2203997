#pragma once

#include <cstddef>
#include <vector>

#include "arl/rng.hpp"

namespace arl::mdp {

/// Independent Normal posteriors over each site's mean reward, with known
/// observation noise variance 1 and a N(0, 1) prior. Precision at a site is
/// always 1 + (number of observations there).
class RewardBelief {
 public:
  explicit RewardBelief(std::size_t num_sites);

  std::size_t num_sites() const { return means_.size(); }
  double mean(std::size_t site) const { return means_.at(site); }
  double precision(std::size_t site) const { return 1.0 + static_cast<double>(counts_.at(site)); }
  double variance(std::size_t site) const { return 1.0 / precision(site); }
  long count(std::size_t site) const { return counts_.at(site); }
  long total_count() const;

  const std::vector<double>& means() const { return means_; }
  const std::vector<long>& counts() const { return counts_; }

  /// Conjugate update with one observation r: mean <- (tau mu + r)/(tau + 1).
  void observe(std::size_t site, double reward);

  /// One reward table drawn from the posterior.
  std::vector<double> sample(Rng& rng) const;

  friend bool operator==(const RewardBelief&, const RewardBelief&) = default;

 private:
  std::vector<double> means_;
  std::vector<long> counts_;
};

}  // namespace arl::mdp
