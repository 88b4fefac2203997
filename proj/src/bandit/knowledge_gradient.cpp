#include "arl/bandit/knowledge_gradient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace arl::bandit {

KgBelief kg_belief_from(std::span<const ArmBelief> beliefs, double prior_alpha) {
  KgBelief out;
  out.arms.reserve(beliefs.size());
  for (const auto& b : beliefs) {
    const double p = b.mean();
    const double noise = std::max(kKgNoiseFloor, p * (1.0 - p));
    const double successes = b.alpha - prior_alpha;
    const double observations = static_cast<double>(b.observed_count);
    const double precision = 1.0 / kKgPriorVariance + observations / noise;
    GaussianArm arm;
    arm.mean = (kKgPriorMean / kKgPriorVariance + successes / noise) / precision;
    arm.variance = 1.0 / precision;
    arm.noise_variance = noise;
    out.arms.push_back(arm);
  }
  return out;
}

double kg_f(double z) {
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  return z * cdf + pdf;
}

double kg_sigma_tilde(const GaussianArm& arm, long m) {
  if (m < 1) throw std::invalid_argument("knowledge gradient needs m >= 1");
  if (!(arm.noise_variance > 0.0)) throw std::invalid_argument("noise variance must be positive");
  if (!(arm.variance > 0.0)) return 0.0;
  const double post = 1.0 / (1.0 / arm.variance + static_cast<double>(m) / arm.noise_variance);
  return std::sqrt(std::max(0.0, arm.variance - post));
}

double kg_multistep_value(const KgBelief& belief, std::size_t arm, long m, long remaining) {
  if (arm >= belief.arms.size()) throw std::invalid_argument("arm index out of range");
  if (belief.arms.size() < 2 || remaining <= 0) return 0.0;
  const double sigma = kg_sigma_tilde(belief.arms[arm], m);
  if (sigma <= 0.0) return 0.0;
  double competitor = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < belief.arms.size(); ++j) {
    if (j != arm) competitor = std::max(competitor, belief.arms[j].mean);
  }
  const double zeta = -std::abs(belief.arms[arm].mean - competitor) / sigma;
  return static_cast<double>(remaining) * sigma * kg_f(zeta);
}

std::optional<std::size_t> kg_should_query(const KgBelief& belief, int t, int n, double cost) {
  const long remaining = static_cast<long>(n) - t;
  double best_net = 0.0;
  std::optional<std::size_t> choice;
  for (std::size_t i = 0; i < belief.arms.size(); ++i) {
    for (long m = 1; m <= remaining; m *= 2) {
      const double net = kg_multistep_value(belief, i, m, remaining) - cost * static_cast<double>(m);
      if (net > best_net) {
        best_net = net;
        choice = i;
      }
    }
  }
  return choice;
}

}  // namespace arl::bandit
