#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "arl/bandit/core.hpp"
#include "arl/bandit/dmed.hpp"
#include "arl/bandit/knowledge_gradient.hpp"
#include "arl/bandit/policy.hpp"
#include "arl/bandit/query_rules.hpp"

using namespace arl;
using namespace arl::bandit;

namespace {

ArmBelief belief(double alpha, double beta, long observed) { return {alpha, beta, observed, observed}; }

bool is_query_prefix(const std::vector<bool>& q) {
  std::size_t i = 0;
  while (i < q.size() && q[i]) ++i;
  for (; i < q.size(); ++i)
    if (q[i]) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// DMED

TEST_CASE("Bernoulli KL") {
  const double expected = 0.5 * std::log(0.5 / 0.8) + 0.5 * std::log(0.5 / 0.2);
  CHECK(bernoulli_kl(0.5, 0.8) == doctest::Approx(expected));
  CHECK(bernoulli_kl(0.5, 0.8) == doctest::Approx(0.2231).epsilon(1e-3));
  CHECK(bernoulli_kl(0.3, 0.3) == doctest::Approx(0.0));
  CHECK(std::isfinite(bernoulli_kl(0.0, 1.0)));
  CHECK(bernoulli_kl(0.0, 1.0) > 20.0);
}

TEST_CASE("first DMED sweep plays every arm once") {
  DmedState state(4);
  std::vector<ArmBelief> beliefs(4);
  std::vector<int> plays(4, 0);
  for (int t = 1; t <= 4; ++t) ++plays[dmed_next_action(state, beliefs, t)];
  for (int p : plays) CHECK(p == 1);
}

TEST_CASE("DMED list rebuild excludes clearly worse arms") {
  // Arm 1 at 0.5 with 50 observations against a 0.8 leader at t = 10^4:
  // 50 * 0.2231 = 11.2 > ln 10^4 = 9.21.
  std::vector<ArmBelief> beliefs{belief(8.0, 2.0, 8), belief(26.0, 26.0, 50)};
  REQUIRE(50.0 * bernoulli_kl(0.5, 0.8) > std::log(1e4));
  CHECK(dmed_rebuild_list(beliefs, 10000) == std::vector<std::size_t>{0});
  // Few observations keep it in the list.
  beliefs[1] = belief(3.0, 3.0, 4);
  CHECK(dmed_rebuild_list(beliefs, 10000) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("DMED list always keeps the leader") {
  std::vector<ArmBelief> beliefs{belief(2.0, 30.0, 30), belief(30.0, 2.0, 30), belief(2.0, 30.0, 30)};
  const auto list = dmed_rebuild_list(beliefs, 2);
  CHECK(list == std::vector<std::size_t>{1});
  DmedState state(3);
  state.cursor = 3;
  CHECK(dmed_next_action(state, beliefs, 2) == 1);
  CHECK(state.narrowed_to_one);
}

// ---------------------------------------------------------------------------
// MCCH

TEST_CASE("m_hat examples") {
  std::vector<ArmBelief> equal{belief(3, 3, 4), belief(5, 5, 8)};
  CHECK(mcch_m_hat(equal) == 1);
  std::vector<ArmBelief> two{belief(8, 2, 40), belief(5, 5, 10)};
  CHECK(mcch_m_hat(two) == 22);
  std::vector<ArmBelief> three{belief(8, 2, 40), belief(5, 5, 10), belief(4, 6, 2)};
  CHECK(mcch_m_hat(three) == 3);
  std::vector<ArmBelief> one{belief(8, 2, 40)};
  CHECK(mcch_m_hat(one) == 1);
}

TEST_CASE("m_hat grows with the runner-up gap") {
  long previous = 0;
  for (double runner_up = 0.79; runner_up > 0.05; runner_up -= 0.02) {
    std::vector<ArmBelief> b{belief(80, 20, 30), belief(100 * runner_up, 100 * (1 - runner_up), 30)};
    const long m = mcch_m_hat(b);
    CHECK(m >= previous);
    previous = m;
  }
}

TEST_CASE("MCCH criterion arithmetic") {
  CHECK(mcch_criterion(2.0, 22, 1.0, 9000 * 0.01));
  CHECK_FALSE(mcch_criterion(2.0, 46, 1.0, 90.0));
  CHECK(mcch_criterion(0.0, 5, 1.0, 1e-9));
  CHECK_FALSE(mcch_criterion(0.0, 5, 1.0, 0.0));
}

TEST_CASE("MCCH at zero cost queries without touching the stream") {
  Rng rng(1), untouched(1);
  std::vector<ArmBelief> b{belief(8, 2, 40), belief(5, 5, 10)};
  CHECK(mcch_should_query(b, {}, 5, 100, 0.0, rng));
  CHECK(rng() == untouched());
}

TEST_CASE("MCCH stops with nothing left to lose") {
  Rng rng(1);
  std::vector<ArmBelief> sharp{belief(1e6, 1, 10), belief(1, 1e6, 10)};
  CHECK_FALSE(mcch_should_query(sharp, {}, 100, 100, 1.0, rng));
  std::vector<ArmBelief> flat(2);
  CHECK_FALSE(mcch_should_query(flat, {}, 101, 100, 1.0, rng));
  CHECK(mcch_should_query(flat, {}, 1, 10000, 1.0, rng));
  CHECK_THROWS_AS(mcch_should_query(flat, {0.0, 10}, 1, 100, 1.0, rng), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Knowledge gradient

TEST_CASE("kg_f values") {
  CHECK(kg_f(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)));
  CHECK(kg_f(0.0) == doctest::Approx(0.39894).epsilon(1e-4));
  CHECK(kg_f(-8.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(kg_f(3.0) == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("sigma tilde closed form") {
  const GaussianArm arm{0.5, 0.04, 0.25};
  const double expected_var = 0.04 - 1.0 / (1.0 / 0.04 + 1.0 / 0.25);
  CHECK(expected_var == doctest::Approx(0.005517).epsilon(1e-3));
  CHECK(kg_sigma_tilde(arm, 1) == doctest::Approx(std::sqrt(expected_var)));
  CHECK(kg_sigma_tilde(arm, 1) == doctest::Approx(0.07428).epsilon(1e-3));
  CHECK(kg_sigma_tilde({0.5, 0.0, 0.25}, 4) == 0.0);
  CHECK_THROWS_AS(kg_sigma_tilde(arm, 0), std::invalid_argument);
}

TEST_CASE("KG value vanishes for degenerate posteriors and single arms") {
  KgBelief degenerate{{{0.6, 1e-300, 0.25}, {0.4, 1e-300, 0.25}}};
  for (long m : {1L, 4L, 64L}) CHECK(kg_multistep_value(degenerate, 0, m, 1000) == doctest::Approx(0.0));
  KgBelief single{{{0.6, 0.1, 0.25}}};
  CHECK(kg_multistep_value(single, 0, 1, 1000) == 0.0);
  CHECK_FALSE(kg_should_query(degenerate, 1, 1000, 0.01).has_value());
}

TEST_CASE("KG value monotonicity") {
  KgBelief b{{{0.55, 0.02, 0.24}, {0.45, 0.03, 0.24}}};
  double previous = 0.0;
  for (long m = 1; m <= 1024; m *= 2) {
    const double v = kg_multistep_value(b, 1, m, 500);
    CHECK(v >= previous);
    previous = v;
  }
  previous = 0.0;
  for (long remaining = 1; remaining <= 4096; remaining *= 2) {
    const double v = kg_multistep_value(b, 1, 4, remaining);
    CHECK(v >= previous);
    previous = v;
  }
  previous = 1e300;
  for (double gap = 0.0; gap <= 0.5; gap += 0.05) {
    KgBelief g{{{0.5, 0.02, 0.24}, {0.5 - gap, 0.03, 0.24}}};
    const double v = kg_multistep_value(g, 1, 4, 500);
    CHECK(v <= previous);
    previous = v;
  }
}

TEST_CASE("KG query decision limits") {
  std::vector<ArmBelief> beliefs{belief(3, 2, 3), belief(2, 2, 2)};
  const KgBelief b = kg_belief_from(beliefs);
  CHECK(kg_should_query(b, 1, 100, 0.0).has_value());
  // The value of m queries is at most remaining * sigma * f(0) <= n * 0.5 * 0.4
  // because the prior standard deviation is 0.5; any cost at or above n per
  // query therefore never pays off.
  for (int n : {10, 100, 1000}) {
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      for (long obs : {0L, 1L, 5L, 50L}) {
        std::vector<ArmBelief> grid{belief(1 + p * obs, 1 + (1 - p) * obs, obs), belief(2, 2, 2)};
        CHECK_FALSE(kg_should_query(kg_belief_from(grid), 1, n, static_cast<double>(n)).has_value());
      }
    }
  }
}

TEST_CASE("KG surrogate from an untouched Beta prior") {
  std::vector<ArmBelief> beliefs(2);
  const KgBelief b = kg_belief_from(beliefs);
  CHECK(b.arms[0].mean == doctest::Approx(kKgPriorMean));
  CHECK(b.arms[0].variance == doctest::Approx(kKgPriorVariance));
  CHECK(b.arms[0].noise_variance == doctest::Approx(0.25));
  std::vector<ArmBelief> extreme{belief(1, 1001, 1000)};
  CHECK(kg_belief_from(extreme).arms[0].noise_variance == kKgNoiseFloor);
}

// ---------------------------------------------------------------------------
// Simple stopping rules

TEST_CASE("1/t querying") {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) CHECK(recip_t_should_query(1, rng));
  const int trials = 10000, t = 50;
  int hits = 0;
  for (int i = 0; i < trials; ++i) hits += recip_t_should_query(t, rng) ? 1 : 0;
  const double p = 1.0 / t;
  const double sd = std::sqrt(trials * p * (1 - p));
  CHECK(std::abs(hits - trials * p) < 4.0 * sd);
  Rng a(8), b(8);
  for (int k = 1; k < 200; ++k) CHECK(recip_t_should_query(k, a) == recip_t_should_query(k, b));
}

TEST_CASE("DMED-stop latches") {
  DmedState state(3);
  CHECK(dmed_stop_should_query(state));
  state.current_list = {2};
  state.narrowed_to_one = true;
  CHECK_FALSE(dmed_stop_should_query(state));
  state.current_list = {0, 1, 2};
  CHECK_FALSE(dmed_stop_should_query(state));
}

TEST_CASE("fixed stopping time") {
  for (int t = 1; t <= 10; ++t) CHECK_FALSE(fixed_stop_should_query(t, 0));
  for (int t = 1; t <= 10; ++t) CHECK(fixed_stop_should_query(t, 10));
  CHECK_FALSE(fixed_stop_should_query(101, 100));
  CHECK(fixed_stop_should_query(100, 100));
}

// ---------------------------------------------------------------------------
// Policies

TEST_CASE("policy factory") {
  for (const auto& name : bandit_policy_names()) {
    auto p = make_bandit_policy(name, {1.0, 64, 10}, 2, 20, 1.0);
    CHECK(p != nullptr);
  }
  CHECK_THROWS_AS(make_bandit_policy("ucb", {}, 2, 20, 1.0), std::invalid_argument);
}

TEST_CASE("stopping policies produce query prefixes and commit") {
  const BernoulliBandit bandit({0.7, 0.5, 0.4}, 2000, 1.0);
  for (const char* name : {"mcch", "fixed-stop", "dmed-stop", "kg", "never-query"}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Rng env(seed), agent(seed + 100);
      auto policy = make_bandit_policy(name, {1.0, 64, 50}, 3, bandit.horizon(), bandit.query_cost());
      const auto r = run_bandit(bandit, *policy, env, agent);
      CHECK(is_query_prefix(r.state.query_flags()));
      CHECK(r.state.actions().size() == 2000);
      CHECK(r.state.committed_arm().has_value());
      CHECK(r.state.cumulative_pseudo_regret() == doctest::Approx(pseudo_regret(bandit, r.state)));
    }
  }
}

TEST_CASE("fixed-stop queries exactly tau rounds") {
  const BernoulliBandit bandit({0.6, 0.5}, 500, 1.0);
  Rng env(1), agent(2);
  auto policy = make_bandit_policy("fixed-stop", {1.0, 64, 120}, 2, 500, 1.0);
  const auto r = run_bandit(bandit, *policy, env, agent);
  CHECK(r.state.total_queries() == 120);
}

TEST_CASE("never-query on equal means has zero regret") {
  const BernoulliBandit bandit({0.5, 0.5}, 1000, 3.0);
  Rng env(1), agent(2);
  auto policy = make_bandit_policy("never-query", {}, 2, 1000, 3.0);
  const auto r = run_bandit(bandit, *policy, env, agent);
  CHECK(r.state.cumulative_pseudo_regret() == 0.0);
  CHECK(r.state.total_queries() == 0);
}

TEST_CASE("observed counts follow queries, pulls follow plays") {
  const BernoulliBandit bandit({0.6, 0.4, 0.5}, 3000, 0.0);
  Rng env(5), agent(6);
  auto policy = make_bandit_policy("recip-t", {}, 3, 3000, 0.0);
  const auto r = run_bandit(bandit, *policy, env, agent);
  long pulls = 0, observed = 0;
  for (const auto& b : r.beliefs) {
    pulls += b.pulls;
    observed += b.observed_count;
    CHECK(b.alpha + b.beta - 2.0 == static_cast<double>(b.observed_count));
  }
  CHECK(pulls == 3000);
  CHECK(observed == r.state.total_queries());
}
