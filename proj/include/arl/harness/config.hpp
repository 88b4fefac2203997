#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace arl::harness {

/// Bad names, out-of-range values, unsupported combinations. CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable files. CLI exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Kind { Bandit, Mdp };

std::string to_string(Kind kind);

inline constexpr int kDefaultBanditSeeds = 100;
inline constexpr int kDefaultMdpSeeds = 30;
inline constexpr int kBanditCheckpointEvery = 100;

struct ExperimentConfig {
  Kind kind = Kind::Bandit;

  // Bandit: "means=0.8,0.5". MDP: chain10 | long-y | grid4.
  std::string env = "means=0.8,0.5";
  double cost = 1.0;
  int horizon = 10000;
  long episodes = 4096;

  // Bandit policy name or MDP strategy spec.
  std::string algo = "mcch";

  double alpha = 1.0;
  int mc_samples = 256;
  int stop_time = 0;
  double k = 1.0;
  int mc_envs = 1;
  std::vector<long> candidates = {0, 1, 2, 4, 8, 16, 32};

  std::vector<std::uint64_t> seeds;
  std::uint64_t master_seed = 0x5eed;
  int checkpoint_every = kBanditCheckpointEvery;
  int threads = 1;
  std::string out_dir = "results";

  // Set for sweep cells: "key=value" of the swept axis.
  std::string sweep_label;
};

/// Parses "means=0.8,0.5" into arm means. Throws ConfigError.
std::vector<double> parse_bandit_means(const std::string& env);

/// Parses "100" (seeds 0..99) or "3,7,11" (explicit list). Throws ConfigError.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

/// Checks names, ranges and combinations. Throws ConfigError.
void validate(const ExperimentConfig& config);

/// Environment label used in CSV rows and file names (no commas).
std::string env_label(const ExperimentConfig& config);

/// "alpha=1" for mcch, "tau=100" for fixed-stop, "k=1" for VOI strategies;
/// the sweep label when set; empty otherwise.
std::string param_label(const ExperimentConfig& config);

/// Sets one sweepable parameter from its string value: alpha, tau, k, cost,
/// mc-samples, mc-envs, fixed-n, budget. Throws ConfigError.
void apply_param(ExperimentConfig& config, const std::string& key, const std::string& value);

nlohmann::json to_json(const ExperimentConfig& config);

/// Overlays the keys present in `j` onto `config`. Throws ConfigError.
void merge_json(ExperimentConfig& config, const nlohmann::json& j);

/// Stable 64-bit hash of everything that affects a run except the seed list,
/// thread count and output location.
std::uint64_t config_hash(const ExperimentConfig& config);

/// Shortest round-trip decimal text, '.' separator, no locale.
std::string format_double(double x);

}  // namespace arl::harness
