#include "arl/harness/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "arl/bandit/bayes_dp.hpp"
#include "arl/bandit/policy.hpp"
#include "arl/mdp/planning.hpp"
#include "arl/query/strategies.hpp"

namespace arl::harness {

RunStreams make_streams(std::uint64_t master_seed, std::uint64_t seed) {
  const std::uint64_t run_seed = split_seed(master_seed, seed);
  return {Rng(split_seed(run_seed, "env")), Rng(split_seed(run_seed, "agent"))};
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

std::string run_id(const ExperimentConfig& config, std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%08llx",
                static_cast<unsigned long long>(config_hash(config) & 0xffffffffULL));
  return std::string(buf) + "-" + std::to_string(seed);
}

RunRecord make_record(const ExperimentConfig& config, std::uint64_t seed) {
  RunRecord r;
  r.run_id = run_id(config, seed);
  r.seed = seed;
  r.kind = to_string(config.kind);
  r.env = env_label(config);
  r.algo = config.algo;
  r.cost = config.cost;
  r.param = param_label(config);
  return r;
}

std::vector<Row> bandit_rows(const bandit::BernoulliBandit& bandit,
                             const bandit::BanditRunState& state, int every) {
  std::vector<Row> rows;
  const auto& actions = state.actions();
  const auto& flags = state.query_flags();
  Row block;
  double cum = 0.0;
  for (std::size_t k = 0; k < actions.size(); ++k) {
    const double cost = flags[k] ? bandit.query_cost() : 0.0;
    block.ret += bandit.mean(actions[k]);
    block.queries += flags[k] ? 1 : 0;
    block.cost_paid += cost;
    cum += bandit.gap(actions[k]) + cost;
    const long t = static_cast<long>(k) + 1;
    if (t % every == 0 || k + 1 == actions.size()) {
      block.index = t;
      block.cum_regret = cum;
      rows.push_back(block);
      block = Row{};
    }
  }
  return rows;
}

}  // namespace

std::vector<RunRecord> run_bandit_experiment(const ExperimentConfig& config) {
  if (config.kind != Kind::Bandit) throw ConfigError("not a bandit config");
  validate(config);
  const bandit::BernoulliBandit bandit(parse_bandit_means(config.env), config.horizon, config.cost);
  const bandit::PolicyParams params{config.alpha, config.mc_samples, config.stop_time};
  // Surface unknown names and DP limits as configuration errors up front.
  try {
    bandit::make_bandit_policy(config.algo, params, bandit.num_arms(), bandit.horizon(),
                               bandit.query_cost());
  } catch (const bandit::ResourceLimitError& e) {
    throw ConfigError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  std::vector<RunRecord> records(config.seeds.size());
  parallel_for(config.seeds.size(), config.threads, [&](std::size_t i) {
    const std::uint64_t seed = config.seeds[i];
    auto streams = make_streams(config.master_seed, seed);
    auto policy = bandit::make_bandit_policy(config.algo, params, bandit.num_arms(),
                                             bandit.horizon(), bandit.query_cost());
    const auto result = bandit::run_bandit(bandit, *policy, streams.env, streams.agent);
    RunRecord rec = make_record(config, seed);
    rec.rows = bandit_rows(bandit, result.state, config.checkpoint_every);
    records[i] = std::move(rec);
  });
  return records;
}

MdpRunResult run_mdp(const mdp::TabularMDP& mdp, mdp::QueryStrategy& strategy, long episodes,
                     double cost, RunStreams& streams) {
  MdpRunResult out{{}, mdp::RewardBelief(mdp.num_sites()), {}, 0.0};
  out.optimal_value = mdp::plan_optimal(mdp, mdp.true_means()).start_value;
  out.rows.reserve(static_cast<std::size_t>(episodes));
  double cum = 0.0;
  for (long e = 0; e < episodes; ++e) {
    strategy.begin_episode(mdp, out.final_belief, episodes - e, streams.agent);
    const auto trace = mdp::psrl_episode(mdp, out.final_belief, strategy, streams.env);
    Row row;
    row.index = e + 1;
    row.ret = trace.ret;
    row.queries = trace.queries;
    row.cost_paid = cost * static_cast<double>(trace.queries);
    cum += out.optimal_value - (trace.ret - row.cost_paid);
    row.cum_regret = cum;
    out.rows.push_back(row);
  }
  out.site_queries = out.final_belief.counts();
  return out;
}

std::vector<RunRecord> run_mdp_experiment(const ExperimentConfig& config) {
  if (config.kind != Kind::Mdp) throw ConfigError("not an MDP config");
  validate(config);
  const mdp::TabularMDP env = mdp::make_environment(config.env);
  query::StrategyParams params;
  params.cost = config.cost;
  params.k = config.k;
  params.mc_envs = config.mc_envs;
  params.candidates = config.candidates;
  try {
    query::make_query_strategy(config.algo, params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  std::vector<RunRecord> records(config.seeds.size());
  parallel_for(config.seeds.size(), config.threads, [&](std::size_t i) {
    const std::uint64_t seed = config.seeds[i];
    auto streams = make_streams(config.master_seed, seed);
    auto strategy = query::make_query_strategy(config.algo, params);
    auto result = run_mdp(env, *strategy, config.episodes, config.cost, streams);
    RunRecord rec = make_record(config, seed);
    rec.rows = std::move(result.rows);
    records[i] = std::move(rec);
  });
  return records;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
  return config.kind == Kind::Bandit ? run_bandit_experiment(config) : run_mdp_experiment(config);
}

SweepAxis parse_grid(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size())
    throw ConfigError("grid must look like key=v1,v2,...: '" + text + "'");
  SweepAxis axis;
  axis.key = text.substr(0, eq);
  std::string rest = text.substr(eq + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto comma = rest.find(',', start);
    const std::string v = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (v.empty()) throw ConfigError("empty value in grid: '" + text + "'");
    axis.values.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return axis;
}

SweepResult sweep(const ExperimentConfig& base, const SweepAxis& axis) {
  if (axis.values.empty()) throw ConfigError("sweep grid must be nonempty");
  std::vector<ExperimentConfig> cells;
  for (const auto& value : axis.values) {
    ExperimentConfig cell = base;
    apply_param(cell, axis.key, value);
    cell.sweep_label = axis.key + "=" + value;
    validate(cell);
    cells.push_back(std::move(cell));
  }
  SweepResult out;
  for (const auto& cell : cells) {
    auto recs = run_experiment(cell);
    out.records.insert(out.records.end(), std::make_move_iterator(recs.begin()),
                       std::make_move_iterator(recs.end()));
  }
  out.cells = summarize(out.records);
  return out;
}

std::vector<CellSummary> summarize(const std::vector<RunRecord>& records) {
  std::vector<CellSummary> cells;
  std::map<std::tuple<std::string, std::string, double, std::string>, std::size_t> index;
  std::vector<std::vector<double>> regrets;
  std::vector<double> queries;
  for (const auto& r : records) {
    const auto key = std::make_tuple(r.env, r.algo, r.cost, r.param);
    auto [it, inserted] = index.emplace(key, cells.size());
    if (inserted) {
      cells.push_back({r.env, r.algo, r.cost, r.param});
      regrets.emplace_back();
      queries.push_back(0.0);
    }
    const std::size_t c = it->second;
    regrets[c].push_back(r.rows.empty() ? 0.0 : r.rows.back().cum_regret);
    long q = 0;
    for (const auto& row : r.rows) q += row.queries;
    queries[c] += static_cast<double>(q);
  }
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& xs = regrets[c];
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    cells[c].runs = xs.size();
    cells[c].mean_regret = mean;
    cells[c].std_regret = sd;
    cells[c].stderr_regret = sd / std::sqrt(n);
    cells[c].mean_queries = queries[c] / n;
  }
  return cells;
}

}  // namespace arl::harness
