#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "arl/harness/config.hpp"
#include "arl/harness/results_io.hpp"
#include "arl/harness/runner.hpp"

using namespace arl::harness;

namespace {

ExperimentConfig small_bandit(const std::string& algo) {
  ExperimentConfig c;
  c.kind = Kind::Bandit;
  c.env = "means=0.8,0.5";
  c.cost = 1.0;
  c.horizon = 500;
  c.algo = algo;
  c.mc_samples = 64;
  c.seeds = parse_seeds("6");
  return c;
}

ExperimentConfig small_mdp(const std::string& env, const std::string& algo, double cost) {
  ExperimentConfig c;
  c.kind = Kind::Mdp;
  c.env = env;
  c.cost = cost;
  c.episodes = 32;
  c.algo = algo;
  c.seeds = parse_seeds("4");
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

TEST_CASE("seed lists") {
  CHECK(parse_seeds("3") == std::vector<std::uint64_t>{0, 1, 2});
  CHECK(parse_seeds("7,3,11") == std::vector<std::uint64_t>{7, 3, 11});
  CHECK_THROWS_AS(parse_seeds("0"), ConfigError);
  CHECK_THROWS_AS(parse_seeds("-2"), ConfigError);
  CHECK_THROWS_AS(parse_seeds("x"), ConfigError);
  CHECK_THROWS_AS(parse_seeds("1,,2"), ConfigError);
}

TEST_CASE("bandit means") {
  CHECK(parse_bandit_means("means=0.8,0.5") == std::vector<double>{0.8, 0.5});
  CHECK_THROWS_AS(parse_bandit_means("0.8,0.5"), ConfigError);
  CHECK_THROWS_AS(parse_bandit_means("means=1.2,0.5"), ConfigError);
  CHECK_THROWS_AS(parse_bandit_means("means=0.8,abc"), ConfigError);
  CHECK_THROWS_AS(parse_bandit_means("means="), ConfigError);
}

TEST_CASE("validation rejects bad names and ranges") {
  auto b = small_bandit("mcch");
  CHECK_NOTHROW(validate(b));
  auto bad = b;
  bad.algo = "ucb";
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = b;
  bad.cost = -1.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = b;
  bad.cost = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = b;
  bad.alpha = 0.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = b;
  bad.horizon = 0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = b;
  bad.threads = 0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = b;
  bad.seeds.clear();
  CHECK_THROWS_AS(validate(bad), ConfigError);

  auto m = small_mdp("chain10", "voi-greedy", 1.0);
  CHECK_NOTHROW(validate(m));
  bad = m;
  bad.env = "chain11";
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = m;
  bad.algo = "sometimes";
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = m;
  bad.cost = 0.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad.algo = "voi-omniscient";
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad.algo = "asqr-loop";
  CHECK_NOTHROW(validate(bad));
  bad = m;
  bad.candidates.clear();
  CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("the exact DP is limited to small problems") {
  auto c = small_bandit("bayes-dp");
  c.horizon = 10;
  c.seeds = parse_seeds("2");
  CHECK_NOTHROW(run_experiment(c));
  c.horizon = 26;
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
  c.horizon = 10;
  c.env = "means=0.8,0.5,0.4";
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
}

TEST_CASE("sweepable parameters") {
  auto c = small_mdp("chain10", "never", 1.0);
  apply_param(c, "fixed-n", "25");
  CHECK(c.algo == "fixed-n:25");
  apply_param(c, "budget", "500");
  CHECK(c.algo == "budget:500");
  apply_param(c, "cost", "2.5");
  CHECK(c.cost == 2.5);
  apply_param(c, "mc-envs", "3");
  CHECK(c.mc_envs == 3);
  CHECK_THROWS_AS(apply_param(c, "gamma", "1"), ConfigError);
  CHECK_THROWS_AS(apply_param(c, "k", "one"), ConfigError);
}

TEST_CASE("grid parsing") {
  const auto axis = parse_grid("alpha=0.1,0.3,1");
  CHECK(axis.key == "alpha");
  CHECK(axis.values == std::vector<std::string>{"0.1", "0.3", "1"});
  CHECK_THROWS_AS(parse_grid("alpha"), ConfigError);
  CHECK_THROWS_AS(parse_grid("=1,2"), ConfigError);
  CHECK_THROWS_AS(parse_grid("alpha="), ConfigError);
  CHECK_THROWS_AS(parse_grid("alpha=1,,2"), ConfigError);
}

TEST_CASE("JSON config round trip") {
  auto c = small_mdp("long-y", "voi-greedy", 3.0);
  c.k = 2.0;
  c.mc_envs = 5;
  ExperimentConfig back;
  merge_json(back, to_json(c));
  CHECK(back.kind == Kind::Mdp);
  CHECK(back.env == "long-y");
  CHECK(back.algo == "voi-greedy");
  CHECK(back.cost == 3.0);
  CHECK(back.k == 2.0);
  CHECK(back.mc_envs == 5);
  CHECK(back.seeds == c.seeds);
  CHECK(config_hash(back) == config_hash(c));

  ExperimentConfig x;
  CHECK_THROWS_AS(merge_json(x, nlohmann::json{{"kind", "pomdp"}}), ConfigError);
  CHECK_THROWS_AS(merge_json(x, nlohmann::json{{"cost", "cheap"}}), ConfigError);
  merge_json(x, nlohmann::json{{"seeds", 5}});
  CHECK(x.seeds.size() == 5);
}

TEST_CASE("config hash ignores seeds, threads and output location only") {
  const auto c = small_bandit("mcch");
  auto d = c;
  d.seeds = parse_seeds("50");
  d.threads = 8;
  d.out_dir = "elsewhere";
  CHECK(config_hash(c) == config_hash(d));
  d.alpha = 2.0;
  CHECK(config_hash(c) != config_hash(d));
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.0, 1.0, 0.1, 1.0 / 3.0, 123456.789, 1e-300, -2.5e17}) {
    const std::string s = format_double(x);
    CHECK(s.find(',') == std::string::npos);
    CHECK(std::stod(s) == x);
  }
  CHECK(format_double(10.0) == "10");
}

// ---------------------------------------------------------------------------
// Runner

TEST_CASE("run streams depend only on the seed") {
  auto a = make_streams(1, 7);
  auto b = make_streams(1, 7);
  auto c = make_streams(1, 8);
  const auto x = a.env();
  CHECK(x == b.env());
  CHECK(x != c.env());
  CHECK(a.agent() != x);
}

TEST_CASE("parallel_for visits every index once and rethrows") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, 3,
                               [](std::size_t i) {
                                 if (i == 5) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("results are identical across thread counts") {
  for (const auto& c0 : {small_bandit("mcch"), small_mdp("chain10", "asqr-loop", 1.0)}) {
    auto c1 = c0;
    auto c4 = c0;
    c1.threads = 1;
    c4.threads = 4;
    CHECK(run_experiment(c1) == run_experiment(c4));
  }
}

TEST_CASE("bandit records are blocked by checkpoint and sum to the run totals") {
  auto c = small_bandit("dmed-stop");
  c.horizon = 250;
  c.checkpoint_every = 100;
  const auto records = run_experiment(c);
  REQUIRE(records.size() == 6);
  for (const auto& r : records) {
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[0].index == 100);
    CHECK(r.rows[2].index == 250);
    double paid = 0.0;
    long queries = 0;
    double gain = 0.0;
    for (const auto& row : r.rows) {
      paid += row.cost_paid;
      queries += row.queries;
      gain += row.ret;
    }
    CHECK(paid == doctest::Approx(c.cost * static_cast<double>(queries)));
    // Pseudo-regret = n·μ* − Σμ_A + c·Q.
    CHECK(r.rows.back().cum_regret == doctest::Approx(250 * 0.8 - gain + paid));
  }
}

TEST_CASE("never-query on chain pays nothing and regret grows by V* per episode") {
  const auto c = small_mdp("chain10", "never", 10.0);
  for (const auto& r : run_experiment(c)) {
    REQUIRE(r.rows.size() == 32);
    double prev = 0.0;
    for (const auto& row : r.rows) {
      CHECK(row.queries == 0);
      CHECK(row.cost_paid == 0.0);
      CHECK(row.cum_regret == doctest::Approx(prev + 1.0 - row.ret));
      prev = row.cum_regret;
    }
  }
}

TEST_CASE("a stopping time of zero is never-query") {
  auto base = small_bandit("fixed-stop");
  const auto result = sweep(base, parse_grid("tau=0"));
  auto never = small_bandit("never-query");
  const auto expected = run_experiment(never);
  REQUIRE(result.records.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    REQUIRE(result.records[i].rows.size() == expected[i].rows.size());
    for (std::size_t j = 0; j < expected[i].rows.size(); ++j)
      CHECK(result.records[i].rows[j] == expected[i].rows[j]);
  }
}

TEST_CASE("sweeps label cells and keep per-seed streams") {
  const auto base = small_bandit("mcch");
  const auto result = sweep(base, parse_grid("alpha=0.5,2"));
  REQUIRE(result.cells.size() == 2);
  CHECK(result.cells[0].param == "alpha=0.5");
  CHECK(result.cells[1].param == "alpha=2");
  CHECK(result.cells[0].runs == 6);
  CHECK(result.records.size() == 12);
  CHECK_THROWS_AS(sweep(base, parse_grid("alpha=1,0")), ConfigError);
}

TEST_CASE("summary statistics") {
  std::vector<RunRecord> recs;
  for (double final : {1.0, 2.0, 3.0, 6.0}) {
    RunRecord r;
    r.run_id = "r" + format_double(final);
    r.env = "e";
    r.algo = "a";
    r.rows = {Row{1, 0.0, 2, 0.0, final / 2}, Row{2, 0.0, 1, 0.0, final}};
    recs.push_back(r);
  }
  RunRecord other = recs[0];
  other.algo = "b";
  recs.push_back(other);
  const auto cells = summarize(recs);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0].runs == 4);
  CHECK(cells[0].mean_regret == doctest::Approx(3.0));
  CHECK(cells[0].std_regret == doctest::Approx(std::sqrt(14.0 / 3.0)));
  CHECK(cells[0].stderr_regret == doctest::Approx(std::sqrt(14.0 / 3.0) / 2.0));
  CHECK(cells[0].mean_queries == doctest::Approx(3.0));
  CHECK(cells[1].runs == 1);
  CHECK(cells[1].std_regret == 0.0);
}

// ---------------------------------------------------------------------------
// CSV

TEST_CASE("CSV round trip") {
  auto records = run_experiment(small_bandit("kg"));
  const auto mdp = run_experiment(small_mdp("grid4", "fixed-n:2", 0.5));
  records.insert(records.end(), mdp.begin(), mdp.end());
  const std::string text = to_csv(records);
  CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(from_csv(text) == records);
}

TEST_CASE("empty results are a header-only file") {
  CHECK(to_csv({}) == std::string(kCsvHeader) + "\n");
  CHECK(from_csv(to_csv({})).empty());
}

TEST_CASE("decreasing cumulative regret is rejected") {
  RunRecord r;
  r.run_id = "x";
  r.rows = {Row{1, 0.0, 0, 0.0, 2.0}, Row{2, 0.0, 0, 0.0, 1.0}};
  CHECK_THROWS_AS(to_csv({r}), std::logic_error);
}

TEST_CASE("malformed CSV is an I/O error") {
  const std::string header = std::string(kCsvHeader) + "\n";
  CHECK_THROWS_AS(from_csv(""), IoError);
  CHECK_THROWS_AS(from_csv("a,b,c\n"), IoError);
  CHECK_THROWS_AS(from_csv(header + "x,0,bandit,e,a,1,,1,0,0,0\n"), IoError);
  CHECK_THROWS_AS(from_csv(header + "x,zero,bandit,e,a,1,,1,0,0,0,0\n"), IoError);
  CHECK_THROWS_AS(from_csv(header + "x,0,bandit,e,a,1,,1,0.5x,0,0,0\n"), IoError);
}

TEST_CASE("files and metadata") {
  const auto dir = std::filesystem::temp_directory_path() / "arl_test_harness";
  std::filesystem::remove_all(dir);
  const auto c = small_mdp("chain10", "budget:20", 1.0);
  const auto records = run_experiment(c);
  const std::string csv = (dir / "nested" / "out.csv").string();
  write_results(records, csv);
  CHECK(read_results(csv) == records);
  const std::string meta = (dir / "out.meta.json").string();
  write_metadata(c, meta);
  CHECK(std::filesystem::exists(meta));
  CHECK_THROWS_AS(read_results((dir / "missing.csv").string()), IoError);
  CHECK_THROWS_AS(write_text("x", (dir / "nested" / "out.csv" / "child").string()), IoError);
  CHECK(output_stem(c) == "mdp_chain10_budget_20_c1");
  std::filesystem::remove_all(dir);
}
