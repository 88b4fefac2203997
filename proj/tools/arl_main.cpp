// arl: experiment runner for active bandits and active tabular RL.
//
//   arl bandit --env means=0.8,0.5 --cost 50 --horizon 10000 --algo mcch --alpha 1 --seeds 100 --out results/
//   arl mdp --env chain10 --cost 10 --episodes 4096 --strategy asqr-loop --seeds 30 --out results/
//   arl sweep --kind bandit --grid alpha=0.1,0.3,1,3,10 --env means=0.7,0.5,0.4,0.4,0.4,0.4 --cost 2 ...
//   arl report --in results/*.csv
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arl/harness/config.hpp"
#include "arl/harness/results_io.hpp"
#include "arl/harness/runner.hpp"

namespace {

using arl::harness::ConfigError;
using arl::harness::ExperimentConfig;
using arl::harness::IoError;
using arl::harness::Kind;

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

// Raw option values; empty strings mean "not given" so that config files can
// supply them.
struct Options {
  std::string config_file;
  std::string kind;
  std::string env;
  std::string algo;
  std::string cost;
  std::string horizon;
  std::string episodes;
  std::string alpha;
  std::string tau;
  std::string k;
  std::string mc_samples;
  std::string mc_envs;
  std::string seeds;
  std::string master_seed;
  std::string threads;
  std::string out;
  std::string grid;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--config", o.config_file, "JSON config file; command-line options override it");
  app->add_option("--env", o.env, "bandit: means=p1,p2,...; mdp: chain10|long-y|grid4");
  app->add_option("--cost", o.cost, "query cost c");
  app->add_option("--seeds", o.seeds, "seed count N (seeds 0..N-1) or a comma list");
  app->add_option("--master-seed", o.master_seed, "master seed for stream splitting");
  app->add_option("--threads", o.threads, "worker threads");
  app->add_option("--out", o.out, "output directory");
}

void add_bandit(CLI::App* app, Options& o) {
  app->add_option("--horizon", o.horizon, "rounds n");
  app->add_option("--algo", o.algo,
                  "mcch|kg|recip-t|dmed-stop|fixed-stop|never-query|always-query|bayes-dp");
  app->add_option("--alpha", o.alpha, "MCCH alpha");
  app->add_option("--tau", o.tau, "fixed-stop query stopping time");
  app->add_option("--mc-samples", o.mc_samples, "posterior samples for MCCH");
}

void add_mdp(CLI::App* app, Options& o) {
  app->add_option("--episodes", o.episodes, "episodes E");
  app->add_option("--strategy", o.algo,
                  "fixed-n:<N>|budget:<B>|never|sqr|asqr|asqr-loop|voi-greedy|voi-omniscient");
  app->add_option("--k", o.k, "VOI eagerness k");
  app->add_option("--mc-envs", o.mc_envs, "sampled environments for SQR/VOI");
}

ExperimentConfig resolve(const Options& o, Kind kind) {
  ExperimentConfig c;
  c.kind = kind;
  if (kind == Kind::Mdp) {
    c.env = "chain10";
    c.algo = "asqr-loop";
  }
  if (!o.config_file.empty()) {
    std::ifstream in(o.config_file);
    if (!in) throw IoError("cannot open config: " + o.config_file);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(o.config_file + ": " + e.what());
    }
    arl::harness::merge_json(c, j);
    if (c.kind != kind && o.kind.empty()) kind = c.kind;
  }
  c.kind = kind;
  if (c.seeds.empty())
    c.seeds = arl::harness::parse_seeds(std::to_string(
        kind == Kind::Bandit ? arl::harness::kDefaultBanditSeeds : arl::harness::kDefaultMdpSeeds));

  if (!o.env.empty()) c.env = o.env;
  if (!o.algo.empty()) c.algo = o.algo;
  if (!o.seeds.empty()) c.seeds = arl::harness::parse_seeds(o.seeds);
  if (!o.out.empty()) c.out_dir = o.out;
  const std::pair<const char*, const std::string*> params[] = {
      {"cost", &o.cost}, {"alpha", &o.alpha}, {"tau", &o.tau}, {"k", &o.k},
      {"mc-samples", &o.mc_samples}, {"mc-envs", &o.mc_envs}};
  for (const auto& [key, value] : params)
    if (!value->empty()) arl::harness::apply_param(c, key, *value);
  try {
    if (!o.horizon.empty()) c.horizon = std::stoi(o.horizon);
    if (!o.episodes.empty()) c.episodes = std::stol(o.episodes);
    if (!o.threads.empty()) c.threads = std::stoi(o.threads);
    if (!o.master_seed.empty()) c.master_seed = std::stoull(o.master_seed);
  } catch (const std::exception&) {
    throw ConfigError("invalid integer option");
  }
  arl::harness::validate(c);
  return c;
}

void run_and_write(const ExperimentConfig& c) {
  const auto records = arl::harness::run_experiment(c);
  const std::string stem = c.out_dir + "/" + arl::harness::output_stem(c);
  arl::harness::write_results(records, stem + ".csv");
  arl::harness::write_metadata(c, stem + ".meta.json");
  const auto cells = arl::harness::summarize(records);
  std::cout << arl::harness::summary_csv(cells);
  std::cerr << "wrote " << stem << ".csv\n";
}

void run_sweep(const ExperimentConfig& c, const std::string& grid) {
  const auto axis = arl::harness::parse_grid(grid);
  const auto result = arl::harness::sweep(c, axis);
  const std::string stem =
      c.out_dir + "/sweep_" + axis.key + "_" + arl::harness::output_stem(c);
  arl::harness::write_results(result.records, stem + ".csv");
  arl::harness::write_text(arl::harness::summary_csv(result.cells), stem + ".summary.csv");
  nlohmann::json extra;
  extra["grid_key"] = axis.key;
  extra["grid_values"] = axis.values;
  arl::harness::write_metadata(c, stem + ".meta.json", extra);
  std::cout << arl::harness::summary_csv(result.cells);
  std::cerr << "wrote " << stem << ".csv\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active reinforcement learning experiment runner"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::string> report_inputs;
  std::string report_out;

  auto* bandit = app.add_subcommand("bandit", "run an active bandit experiment");
  add_common(bandit, o);
  add_bandit(bandit, o);

  auto* mdp = app.add_subcommand("mdp", "run an active tabular MDP experiment");
  add_common(mdp, o);
  add_mdp(mdp, o);

  auto* sweep = app.add_subcommand("sweep", "run a one-axis parameter sweep");
  add_common(sweep, o);
  add_bandit(sweep, o);
  sweep->add_option("--episodes", o.episodes, "episodes E (mdp)");
  sweep->add_option("--strategy", o.algo, "query strategy (mdp)");
  sweep->add_option("--k", o.k, "VOI eagerness k (mdp)");
  sweep->add_option("--mc-envs", o.mc_envs, "sampled environments (mdp)");
  sweep->add_option("--kind", o.kind, "bandit|mdp")->check(CLI::IsMember({"bandit", "mdp"}));
  sweep->add_option("--grid", o.grid, "key=v1,v2,... (alpha, tau, k, cost, mc-samples, mc-envs, fixed-n, budget)")
      ->required();

  auto* report = app.add_subcommand("report", "summarize result CSVs");
  report->add_option("--in", report_inputs, "result CSV files")->required();
  report->add_option("--out", report_out, "write the summary CSV here as well");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*bandit) {
      run_and_write(resolve(o, Kind::Bandit));
    } else if (*mdp) {
      run_and_write(resolve(o, Kind::Mdp));
    } else if (*sweep) {
      run_sweep(resolve(o, o.kind == "mdp" ? Kind::Mdp : Kind::Bandit), o.grid);
    } else if (*report) {
      std::vector<arl::harness::RunRecord> all;
      for (const auto& path : report_inputs) {
        auto recs = arl::harness::read_results(path);
        all.insert(all.end(), recs.begin(), recs.end());
      }
      const std::string table = arl::harness::summary_csv(arl::harness::summarize(all));
      std::cout << table;
      if (!report_out.empty()) arl::harness::write_text(table, report_out);
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
