#include "arl/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "arl/bandit/policy.hpp"
#include "arl/mdp/tabular_mdp.hpp"
#include "arl/rng.hpp"

namespace arl::harness {

std::string to_string(Kind kind) { return kind == Kind::Bandit ? "bandit" : "mdp"; }

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw ConfigError("invalid number for " + what + ": '" + text + "'");
  return v;
}

long parse_long(const std::string& text, const std::string& what) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("invalid integer for " + what + ": '" + text + "'");
  return v;
}

bool is_known_strategy(const std::string& s) {
  if (s.starts_with("fixed-n:") || s.starts_with("budget:")) {
    const std::string num = s.substr(s.find(':') + 1);
    return !num.empty() && parse_long(num, s) >= 0;
  }
  for (const char* name : {"never", "sqr", "asqr", "asqr-loop", "voi-greedy", "voi-omniscient"})
    if (s == name) return true;
  return false;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::vector<double> parse_bandit_means(const std::string& env) {
  if (!env.starts_with("means="))
    throw ConfigError("unknown bandit environment: '" + env + "' (expected means=p1,p2,...)");
  std::vector<double> means;
  for (const auto& part : split(env.substr(6), ',')) {
    const double m = parse_double(part, "arm mean");
    if (m < 0.0 || m > 1.0) throw ConfigError("arm mean outside [0,1]: " + part);
    means.push_back(m);
  }
  if (means.empty()) throw ConfigError("bandit needs at least one arm");
  return means;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  const auto parts = split(text, ',');
  std::vector<std::uint64_t> seeds;
  if (parts.size() == 1) {
    const long count = parse_long(parts[0], "seeds");
    if (count < 1) throw ConfigError("seed count must be >= 1");
    for (long i = 0; i < count; ++i) seeds.push_back(static_cast<std::uint64_t>(i));
    return seeds;
  }
  for (const auto& p : parts) {
    const long s = parse_long(p, "seed");
    if (s < 0) throw ConfigError("seeds must be nonnegative");
    seeds.push_back(static_cast<std::uint64_t>(s));
  }
  return seeds;
}

void validate(const ExperimentConfig& c) {
  if (!(c.cost >= 0.0) || !std::isfinite(c.cost)) throw ConfigError("query cost must be >= 0");
  if (c.seeds.empty()) throw ConfigError("at least one seed is required");
  if (c.threads < 1) throw ConfigError("threads must be >= 1");
  if (c.kind == Kind::Bandit) {
    parse_bandit_means(c.env);
    if (c.horizon < 1) throw ConfigError("horizon must be >= 1");
    if (c.checkpoint_every < 1) throw ConfigError("checkpoint interval must be >= 1");
    const auto& names = bandit::bandit_policy_names();
    if (std::find(names.begin(), names.end(), c.algo) == names.end())
      throw ConfigError("unknown bandit policy: '" + c.algo + "'");
    if (!(c.alpha > 0.0)) throw ConfigError("alpha must be > 0");
    if (c.mc_samples < 1) throw ConfigError("mc-samples must be >= 1");
    if (c.stop_time < 0) throw ConfigError("stopping time must be >= 0");
  } else {
    const auto& names = mdp::environment_names();
    if (std::find(names.begin(), names.end(), c.env) == names.end())
      throw ConfigError("unknown MDP environment: '" + c.env + "'");
    if (c.episodes < 1) throw ConfigError("episodes must be >= 1");
    if (!is_known_strategy(c.algo)) throw ConfigError("unknown query strategy: '" + c.algo + "'");
    if (c.algo.starts_with("voi-") && !(c.cost > 0.0))
      throw ConfigError("VOI strategies need a positive query cost (got c=0)");
    if (!(c.k > 0.0)) throw ConfigError("k must be > 0");
    if (c.mc_envs < 1) throw ConfigError("mc-envs must be >= 1");
    if (c.candidates.empty()) throw ConfigError("candidate set must be nonempty");
    for (long n : c.candidates)
      if (n < 0) throw ConfigError("candidates must be >= 0");
  }
}

std::string env_label(const ExperimentConfig& c) {
  if (c.kind == Kind::Mdp) return c.env;
  std::string out = "means=";
  const auto means = parse_bandit_means(c.env);
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (i) out += '/';
    out += format_double(means[i]);
  }
  return out;
}

std::string param_label(const ExperimentConfig& c) {
  if (!c.sweep_label.empty()) return c.sweep_label;
  if (c.kind == Kind::Bandit) {
    if (c.algo == "mcch") return "alpha=" + format_double(c.alpha);
    if (c.algo == "fixed-stop") return "tau=" + std::to_string(c.stop_time);
    return "";
  }
  if (c.algo.starts_with("voi-")) return "k=" + format_double(c.k);
  return "";
}

void apply_param(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "alpha") {
    c.alpha = parse_double(value, key);
  } else if (key == "tau") {
    c.stop_time = static_cast<int>(parse_long(value, key));
  } else if (key == "k") {
    c.k = parse_double(value, key);
  } else if (key == "cost") {
    c.cost = parse_double(value, key);
  } else if (key == "mc-samples") {
    c.mc_samples = static_cast<int>(parse_long(value, key));
  } else if (key == "mc-envs") {
    c.mc_envs = static_cast<int>(parse_long(value, key));
  } else if (key == "fixed-n") {
    c.algo = "fixed-n:" + std::to_string(parse_long(value, key));
  } else if (key == "budget") {
    c.algo = "budget:" + std::to_string(parse_long(value, key));
  } else {
    throw ConfigError("unknown sweep parameter: '" + key + "'");
  }
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["kind"] = to_string(c.kind);
  j["env"] = c.env;
  j["cost"] = c.cost;
  if (c.kind == Kind::Bandit) {
    j["horizon"] = c.horizon;
    j["checkpoint_every"] = c.checkpoint_every;
    j["alpha"] = c.alpha;
    j["mc_samples"] = c.mc_samples;
    j["stop_time"] = c.stop_time;
  } else {
    j["episodes"] = c.episodes;
    j["k"] = c.k;
    j["mc_envs"] = c.mc_envs;
    j["candidates"] = c.candidates;
  }
  j["algo"] = c.algo;
  j["seeds"] = c.seeds;
  j["master_seed"] = c.master_seed;
  j["threads"] = c.threads;
  j["out_dir"] = c.out_dir;
  if (!c.sweep_label.empty()) j["sweep_label"] = c.sweep_label;
  return j;
}

void merge_json(ExperimentConfig& c, const nlohmann::json& j) {
  try {
    if (j.contains("kind")) {
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "bandit") c.kind = Kind::Bandit;
      else if (kind == "mdp") c.kind = Kind::Mdp;
      else throw ConfigError("unknown experiment kind: '" + kind + "'");
    }
    if (j.contains("env")) c.env = j.at("env").get<std::string>();
    if (j.contains("cost")) c.cost = j.at("cost").get<double>();
    if (j.contains("horizon")) c.horizon = j.at("horizon").get<int>();
    if (j.contains("episodes")) c.episodes = j.at("episodes").get<long>();
    if (j.contains("algo")) c.algo = j.at("algo").get<std::string>();
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
    if (j.contains("mc_samples")) c.mc_samples = j.at("mc_samples").get<int>();
    if (j.contains("stop_time")) c.stop_time = j.at("stop_time").get<int>();
    if (j.contains("k")) c.k = j.at("k").get<double>();
    if (j.contains("mc_envs")) c.mc_envs = j.at("mc_envs").get<int>();
    if (j.contains("candidates")) c.candidates = j.at("candidates").get<std::vector<long>>();
    if (j.contains("seeds")) {
      const auto& s = j.at("seeds");
      c.seeds = s.is_number() ? parse_seeds(std::to_string(s.get<long>()))
                              : s.get<std::vector<std::uint64_t>>();
    }
    if (j.contains("master_seed")) c.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("checkpoint_every")) c.checkpoint_every = j.at("checkpoint_every").get<int>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

std::uint64_t config_hash(const ExperimentConfig& c) {
  nlohmann::json j = to_json(c);
  j.erase("seeds");
  j.erase("threads");
  j.erase("out_dir");
  return hash_key(j.dump());
}

}  // namespace arl::harness
