#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>

namespace arl::bandit {

/// Thrown when an exact solver is asked for more than it can enumerate.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BetaPrior {
  double alpha = 1.0;
  double beta = 1.0;
};

struct DpAction {
  std::size_t arm = 0;
  bool query = false;
};

inline constexpr std::size_t kDpMaxArms = 2;
inline constexpr int kDpMaxHorizon = 25;

/// Exact Bayes-optimal policy for an active Bernoulli bandit with K <= 2 arms
/// and n <= 25 rounds.
///
/// The belief state is (round, per-arm success and failure counts of the
/// observed rewards). Actions are arm x {query, skip}; the immediate value is
/// the posterior mean of the arm minus c for a query, and only queried rounds
/// move the belief, weighted by the posterior predictive. Ties prefer not
/// querying, then the lowest arm index.
class BayesOptimalPolicy {
 public:
  static BayesOptimalPolicy solve(std::size_t num_arms, int horizon, double cost,
                                  BetaPrior prior = {});

  /// Bayes value at the prior, round 1.
  double value() const { return value_; }

  std::size_t num_arms() const { return num_arms_; }
  int horizon() const { return horizon_; }

  /// Optimal action for round t given observed successes and failures per
  /// arm. Throws std::out_of_range for belief states that were not solved.
  DpAction action(int t, std::span<const int> successes, std::span<const int> failures) const;

  std::size_t num_states() const { return table_.size(); }

 private:
  struct Entry {
    double value;
    DpAction action;
  };

  BayesOptimalPolicy(std::size_t num_arms, int horizon, double cost, BetaPrior prior)
      : num_arms_(num_arms), horizon_(horizon), cost_(cost), prior_(prior) {}

  static std::uint64_t key(int t, std::span<const int> successes, std::span<const int> failures);
  double solve_state(int t, int* counts);

  std::size_t num_arms_;
  int horizon_;
  double cost_;
  BetaPrior prior_;
  double value_ = 0.0;
  std::unordered_map<std::uint64_t, Entry> table_;
};

}  // namespace arl::bandit
