#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "arl/bandit/core.hpp"

namespace arl::bandit {

struct GaussianArm {
  double mean = 0.5;
  double variance = 0.25;
  double noise_variance = 0.25;
};

/// Gaussian surrogate of the Bernoulli posteriors used by the knowledge
/// gradient policy.
struct KgBelief {
  std::vector<GaussianArm> arms;
};

inline constexpr double kKgPriorMean = 0.5;
inline constexpr double kKgPriorVariance = 0.25;
inline constexpr double kKgNoiseFloor = 0.05;

/// Builds the Gaussian surrogate from Beta beliefs. Observation noise is the
/// plug-in Bernoulli variance p(1-p) of the Beta posterior mean, floored at
/// kKgNoiseFloor; the Gaussian prior is N(0.5, 0.25).
KgBelief kg_belief_from(std::span<const ArmBelief> beliefs, double prior_alpha = 1.0);

/// z * Phi(z) + phi(z).
double kg_f(double z);

/// Posterior-mean standard deviation change from m further observations.
double kg_sigma_tilde(const GaussianArm& arm, long m);

/// remaining * sigma_tilde * f(-|mu_i - max_{j != i} mu_j| / sigma_tilde).
double kg_multistep_value(const KgBelief& belief, std::size_t arm, long m, long remaining);

/// Arm to query at round t, or nullopt if no (arm, m) with m a power of two up
/// to n - t has positive net value kg_multistep_value - c m.
std::optional<std::size_t> kg_should_query(const KgBelief& belief, int t, int n, double cost);

}  // namespace arl::bandit
