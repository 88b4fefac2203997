#pragma once

#include <string>
#include <vector>

#include "arl/harness/config.hpp"
#include "arl/harness/runner.hpp"

namespace arl::harness {

inline constexpr const char* kCsvHeader =
    "run_id,seed,kind,env,algo,cost,param,index,ret,queries,cost_paid,cum_regret";

/// Serializes records to the results CSV format (ASCII, LF endings).
/// Throws std::logic_error if a run's cum_regret ever decreases.
std::string to_csv(const std::vector<RunRecord>& records);

/// Parses CSV text produced by to_csv. Rows of one run_id are grouped into a
/// single record, in order of first appearance. Throws IoError on malformed
/// input.
std::vector<RunRecord> from_csv(const std::string& text);

/// Writes `records` to `path`. Throws IoError.
void write_results(const std::vector<RunRecord>& records, const std::string& path);

/// Reads a results CSV. Throws IoError.
std::vector<RunRecord> read_results(const std::string& path);

/// Sidecar metadata: the resolved config plus tool version and git stamp.
void write_metadata(const ExperimentConfig& config, const std::string& path,
                    const nlohmann::json& extra = {});

/// Summary table: env,algo,cost,param,runs,mean_regret,std_regret,stderr_regret,mean_queries
std::string summary_csv(const std::vector<CellSummary>& cells);
void write_text(const std::string& text, const std::string& path);

/// File stem for an experiment, e.g. "mdp_chain10_asqr-loop_c10".
std::string output_stem(const ExperimentConfig& config);

const char* version_string();
const char* git_stamp();

}  // namespace arl::harness
