#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arl/harness/config.hpp"
#include "arl/mdp/psrl.hpp"
#include "arl/mdp/reward_belief.hpp"
#include "arl/mdp/tabular_mdp.hpp"
#include "arl/rng.hpp"

namespace arl::harness {

/// One CSV row body. For bandits a row covers a block of rounds ending at
/// `index` (ret, queries and cost_paid are block totals); for MDPs it covers
/// episode `index`. cum_regret is always cumulative from the start.
struct Row {
  long index = 0;
  double ret = 0.0;
  long queries = 0;
  double cost_paid = 0.0;
  double cum_regret = 0.0;

  friend bool operator==(const Row&, const Row&) = default;
};

struct RunRecord {
  std::string run_id;
  std::uint64_t seed = 0;
  std::string kind;
  std::string env;
  std::string algo;
  double cost = 0.0;
  std::string param;
  std::vector<Row> rows;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Independent random streams of one run, derived from (master seed, seed)
/// by keyed splitting. Streams depend only on the seed, so different
/// algorithms run with the same seed face the same environment draws.
struct RunStreams {
  Rng env;
  Rng agent;
};
RunStreams make_streams(std::uint64_t master_seed, std::uint64_t seed);

/// Runs fn(i) for i in [0, count) on `threads` workers.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

struct MdpRunResult {
  std::vector<Row> rows;
  mdp::RewardBelief final_belief;
  // Number of queries per reward site over the whole run.
  std::vector<long> site_queries;
  double optimal_value = 0.0;
};

/// One full MDP run: fresh N(0,1) beliefs, then for every episode refresh the
/// strategy, run PSRL, and log return, queries and regret
/// V* - (return - c * queries).
MdpRunResult run_mdp(const mdp::TabularMDP& mdp, mdp::QueryStrategy& strategy, long episodes,
                     double cost, RunStreams& streams);

/// Every seed of a bandit config. Throws ConfigError for invalid configs.
std::vector<RunRecord> run_bandit_experiment(const ExperimentConfig& config);

/// Every seed of an MDP config. Throws ConfigError for invalid configs.
std::vector<RunRecord> run_mdp_experiment(const ExperimentConfig& config);

std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

/// Parses "alpha=0.1,0.3,1". Throws ConfigError.
SweepAxis parse_grid(const std::string& text);

struct CellSummary {
  std::string env;
  std::string algo;
  double cost = 0.0;
  std::string param;
  std::size_t runs = 0;
  double mean_regret = 0.0;
  double std_regret = 0.0;
  double stderr_regret = 0.0;
  double mean_queries = 0.0;
};

struct SweepResult {
  std::vector<RunRecord> records;
  std::vector<CellSummary> cells;
};

/// Cross product of the axis values with the config's seeds. Each cell keeps
/// the same per-seed streams.
SweepResult sweep(const ExperimentConfig& base, const SweepAxis& axis);

/// Mean, sample standard deviation and standard error of the final
/// cum_regret over runs, grouped by (env, algo, cost, param) in first-seen
/// order.
std::vector<CellSummary> summarize(const std::vector<RunRecord>& records);

}  // namespace arl::harness
