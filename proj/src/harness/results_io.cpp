#include "arl/harness/results_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef ARL_VERSION
#define ARL_VERSION "0.0.0"
#endif
#ifndef ARL_GIT_STAMP
#define ARL_GIT_STAMP "unknown"
#endif

namespace fs = std::filesystem;

namespace arl::harness {

const char* version_string() { return ARL_VERSION; }
const char* git_stamp() { return ARL_GIT_STAMP; }

std::string to_csv(const std::vector<RunRecord>& records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    double previous = 0.0;
    for (const auto& row : r.rows) {
      // Tolerates last-bit differences between forward and backward sums.
      if (row.cum_regret < previous - 1e-9 * std::max(1.0, std::abs(previous)))
        throw std::logic_error("cum_regret decreased within run " + r.run_id);
      previous = row.cum_regret;
      out += r.run_id;
      out += ',' + std::to_string(r.seed);
      out += ',' + r.kind;
      out += ',' + r.env;
      out += ',' + r.algo;
      out += ',' + format_double(r.cost);
      out += ',' + r.param;
      out += ',' + std::to_string(row.index);
      out += ',' + format_double(row.ret);
      out += ',' + std::to_string(row.queries);
      out += ',' + format_double(row.cost_paid);
      out += ',' + format_double(row.cum_regret);
      out += '\n';
    }
  }
  return out;
}

namespace {

template <typename T>
T parse_field(const std::string& s, int line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw IoError("malformed number '" + s + "' on line " + std::to_string(line));
  return v;
}

}  // namespace

std::vector<RunRecord> from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw IoError("missing or unexpected CSV header");
  std::vector<RunRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      f.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (f.size() != 12) throw IoError("expected 12 fields on line " + std::to_string(lineno));
    if (records.empty() || records.back().run_id != f[0]) {
      RunRecord r;
      r.run_id = f[0];
      r.seed = parse_field<std::uint64_t>(f[1], lineno);
      r.kind = f[2];
      r.env = f[3];
      r.algo = f[4];
      r.cost = parse_field<double>(f[5], lineno);
      r.param = f[6];
      records.push_back(std::move(r));
    }
    Row row;
    row.index = parse_field<long>(f[7], lineno);
    row.ret = parse_field<double>(f[8], lineno);
    row.queries = parse_field<long>(f[9], lineno);
    row.cost_paid = parse_field<double>(f[10], lineno);
    row.cum_regret = parse_field<double>(f[11], lineno);
    records.back().rows.push_back(row);
  }
  return records;
}

void write_text(const std::string& text, const std::string& path) {
  try {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
  } catch (const fs::filesystem_error& e) {
    throw IoError("cannot create directory for " + path + ": " + e.what());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

void write_results(const std::vector<RunRecord>& records, const std::string& path) {
  write_text(to_csv(records), path);
}

std::vector<RunRecord> read_results(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return from_csv(ss.str());
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_metadata(const ExperimentConfig& config, const std::string& path,
                    const nlohmann::json& extra) {
  nlohmann::json meta;
  meta["config"] = to_json(config);
  meta["config_hash"] = config_hash(config);
  meta["tool"] = "arl";
  meta["version"] = version_string();
  meta["git"] = git_stamp();
  meta["csv_header"] = kCsvHeader;
  if (!extra.is_null()) meta["extra"] = extra;
  write_text(meta.dump(2) + "\n", path);
}

std::string summary_csv(const std::vector<CellSummary>& cells) {
  std::string out = "env,algo,cost,param,runs,mean_regret,std_regret,stderr_regret,mean_queries\n";
  for (const auto& c : cells) {
    out += c.env + ',' + c.algo + ',' + format_double(c.cost) + ',' + c.param + ',' +
           std::to_string(c.runs) + ',' + format_double(c.mean_regret) + ',' +
           format_double(c.std_regret) + ',' + format_double(c.stderr_regret) + ',' +
           format_double(c.mean_queries) + '\n';
  }
  return out;
}

std::string output_stem(const ExperimentConfig& config) {
  std::string raw = to_string(config.kind) + "_" + env_label(config) + "_" + config.algo + "_c" +
                    format_double(config.cost);
  std::string out;
  for (char ch : raw) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.';
    out.push_back(ok ? ch : '_');
  }
  return out;
}

}  // namespace arl::harness
