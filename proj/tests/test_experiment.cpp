#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wrank/error.hpp"
#include "wrank/experiment.hpp"

using namespace wrank;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig smoke_config(const std::string& out) {
  ExperimentConfig cfg;
  cfg.preset = "loc3";
  cfg.phis = {"mww"};
  cfg.d = 2;
  cfg.n_train = cfg.m_train = 20;
  cfg.n_test = cfg.m_test = 200;
  cfg.replications = 1;
  cfg.ga.iterations = 5;
  cfg.output = (fs::temp_directory_path() / out).string();
  return cfg;
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("INI loading and overrides") {
  std::istringstream ini(
      "; comment\n"
      "[experiment]\n"
      "preset = scale2\n"
      "phi = mww; pol:q=4 ; rtb:u0=0.8\n"
      "replications = 3\n"
      "epsilon = auto\n"
      "[optimizer]\n"
      "step_size = 0.05\n"
      "[rate]\n"
      "ladder = 50, 100\n");
  ExperimentConfig cfg;
  cfg.load(ini);
  CHECK(cfg.preset == "scale2");
  CHECK(cfg.phis == std::vector<std::string>{"mww", "pol:q=4", "rtb:u0=0.8"});
  CHECK(cfg.replications == 3);
  CHECK(*cfg.ga.step_size == 0.05);
  CHECK(cfg.rate_ladder == std::vector<long long>{50, 100});
  CHECK(cfg.resolved_epsilon() == doctest::Approx(0.8));
  CHECK(cfg.resolved_scorer() == ModelKind::QuadraticScale);
  CHECK_NOTHROW(cfg.validate());
  cfg.set("experiment.seed", "7");
  CHECK(cfg.seed == 7u);
}

TEST_CASE("invalid configurations") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(cfg.set("experiment.colour", "blue"), ConfigError);
  CHECK_THROWS_AS(cfg.set("experiment.d", "two"), ConfigError);
  std::istringstream stray("d = 3\n");
  CHECK_THROWS_AS(cfg.load(stray), ConfigError);
  CHECK_THROWS_AS(cfg.load_file("/nonexistent/wrank.ini"), ConfigError);

  ExperimentConfig bad;
  bad.replications = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ExperimentConfig{};
  bad.phis = {"median"};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ExperimentConfig{};
  bad.preset = "loc7";
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = ExperimentConfig{};
  bad.rate_ladder = {400, 100};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("resolved config reloads to the same configuration") {
  ExperimentConfig cfg;
  cfg.preset = "loc1";
  cfg.phis = {"pol", "RTB"};
  const std::string text = cfg.resolved_text();
  CHECK(text.find("step_size = 0.1414213562373095") != std::string::npos);
  CHECK(text.find("phi = pol:q=3; rtb:u0=0.9,beta=50,lambda=50") != std::string::npos);
  ExperimentConfig back;
  std::istringstream in(text);
  back.load(in);
  CHECK(back.resolved_text() == text);
}

TEST_CASE("smoke run writes four files") {
  const ExperimentConfig cfg = smoke_config("wrank_smoke");
  fs::remove_all(cfg.output);
  const ExperimentResult r = run_experiment(cfg);
  write_experiment(cfg, r);
  REQUIRE(r.replications.size() == 1);
  const double auc = r.replications[0].runs[0].test_auc;
  CHECK(auc >= 0.0);
  CHECK(auc <= 1.0);
  CHECK(r.failed_runs == 0);
  for (const char* f : {"config.resolved.txt", "replications.csv", "roc_grid.csv", "trajectory.csv"}) {
    CHECK_MESSAGE(fs::exists(fs::path(cfg.output) / f), f);
  }
  const std::string reps = slurp(fs::path(cfg.output) / "replications.csv");
  CHECK(reps.rfind("rep,phi,test_auc,train_criterion_final,stopped_at\n0,mww,", 0) == 0);
  CHECK(count_lines(slurp(fs::path(cfg.output) / "roc_grid.csv")) == 1 + 101);
  CHECK(count_lines(slurp(fs::path(cfg.output) / "trajectory.csv")) ==
        1 + r.replications[0].runs[0].trajectory.size());
  CHECK(reps.find('\r') == std::string::npos);
}

TEST_CASE("svg charts are optional") {
  ExperimentConfig cfg = smoke_config("wrank_svg");
  cfg.svg = true;
  fs::remove_all(cfg.output);
  write_experiment(cfg, run_experiment(cfg));
  CHECK(slurp(fs::path(cfg.output) / "roc_grid.svg").rfind("<svg", 0) == 0);
  CHECK(fs::exists(fs::path(cfg.output) / "trajectory.svg"));
}

TEST_CASE("runs are deterministic and independent of thread count") {
  ExperimentConfig a = smoke_config("wrank_det_a");
  a.replications = 4;
  a.phis = {"mww", "pol:q=3"};
  ExperimentConfig b = a;
  b.output = (fs::temp_directory_path() / "wrank_det_b").string();
  b.threads = 3;
  write_experiment(a, run_experiment(a));
  write_experiment(b, run_experiment(b));
  for (const char* f : {"replications.csv", "roc_grid.csv", "trajectory.csv"}) {
    CHECK_MESSAGE(slurp(fs::path(a.output) / f) == slurp(fs::path(b.output) / f), f);
  }
}

TEST_CASE("scale preset runs with the quadratic scorer") {
  ExperimentConfig cfg = smoke_config("wrank_scale");
  cfg.preset = "scale3";
  cfg.d = 3;
  const ExperimentResult r = run_experiment(cfg);
  CHECK(r.replications[0].runs[0].params.size() == 6);
  CHECK(r.auc_star > 0.5);
  CHECK(std::is_sorted(r.optimal_beta.begin(), r.optimal_beta.end()));
  CHECK(r.optimal_beta.back() == 1.0);
}

TEST_CASE("null model gives chance-level AUC") {
  ExperimentConfig cfg = smoke_config("wrank_null");
  cfg.preset = "loc2";
  cfg.epsilon = 0.0;
  cfg.d = 5;
  cfg.n_train = cfg.m_train = 60;
  cfg.n_test = cfg.m_test = 2000;
  cfg.replications = 5;
  cfg.ga.iterations = 20;
  const ExperimentResult r = run_experiment(cfg);
  CHECK(r.auc_star == doctest::Approx(0.5));
  CHECK(std::abs(r.aggregates[0].mean_test_auc - 0.5) < 0.03);
}

TEST_CASE("fit failures are recorded per replication") {
  ExperimentConfig cfg = smoke_config("wrank_fail");
  cfg.ga.step_size = 1e308;
  cfg.replications = 2;
  const ExperimentResult r = run_experiment(cfg);
  CHECK(r.failed_runs == 2);
  CHECK(r.replications[0].runs[0].failed);
  CHECK(std::isnan(r.replications[0].runs[0].test_auc));
  write_experiment(cfg, r);
  CHECK(slurp(fs::path(cfg.output) / "replications.csv").find("0,mww,nan,nan,-1") != std::string::npos);
}

TEST_CASE("rate study") {
  ExperimentConfig cfg;
  cfg.d = 3;
  cfg.rate_ladder = {100};
  cfg.rate_scorers = 1;
  cfg.rate_seeds = 1;
  const RateResult one = rate_experiment(cfg);
  REQUIRE(one.rows.size() == 1);
  CHECK(one.rows[0].deviation >= 0.0);
  CHECK(one.slopes.empty());

  // One-dimensional location model, where the single scorer is +-theta*.
  cfg.preset = "loc3";
  cfg.d = 1;
  cfg.rate_ladder = {100, 6400};
  cfg.rate_seeds = 10;
  const RateResult ladder = rate_experiment(cfg);
  int shrank = 0;
  for (std::size_t k = 0; k + 1 < ladder.rows.size(); k += 2) {
    shrank += ladder.rows[k + 1].deviation < ladder.rows[k].deviation;
  }
  CHECK(shrank >= 9);

  CHECK(log_log_slope({1, 10, 100}, {1, 0.1, 0.01}) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(log_log_slope({1}, {1}), InvalidInput);
}
