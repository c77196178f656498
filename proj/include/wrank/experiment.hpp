#pragma once

// Declarative Monte-Carlo harness: seeded replications of train / fit / test
// on the synthetic Gaussian models, plus the deviation-rate study.
//
// Configuration is a flat INI file, one section per concern:
//
//   [experiment]  preset, epsilon, scorer, phi, d, n_train, m_train, n_test,
//                 m_test, replications, seed, output, threads, svg
//   [optimizer]   iterations, step_size, bandwidth, bandwidth_scale,
//                 stop_tolerance, renormalize
//   [evaluation]  grid_size, selection_metric
//   [rate]        ladder, scorers, seeds, phi, reference_size
//
// `phi` lists score-generating function specs separated by ';'. Keys whose
// value is `auto` take the documented default.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wrank/optimizer.hpp"
#include "wrank/roceval.hpp"
#include "wrank/scoring_model.hpp"
#include "wrank/synthdata.hpp"

namespace wrank {

struct ExperimentConfig {
  std::string preset = "loc2";
  std::optional<double> epsilon;        // overrides the preset's epsilon
  std::optional<ModelKind> scorer;      // defaults to the model's natural class
  std::vector<std::string> phis = {"mww", "pol:q=3", "rtb:u0=0.9"};
  int d = 15;
  int n_train = 150;
  int m_train = 150;
  int n_test = 10000;
  int m_test = 10000;
  int replications = 50;
  std::uint64_t seed = 20240501;
  std::string output = "wrank_out";
  int threads = 1;
  bool svg = false;

  GaConfig ga;

  std::size_t grid_size = 101;
  CurveMetric selection_metric = CurveMetric::Sup;

  std::vector<long long> rate_ladder = {100, 400, 1600, 6400};
  int rate_scorers = 25;
  int rate_seeds = 10;
  std::string rate_phi = "mww";
  long long rate_reference_size = 1000000;

  /// Throws ConfigError describing the first invalid field.
  void validate() const;
  double resolved_epsilon() const;
  ModelKind resolved_scorer() const;
  std::vector<ScoreGen> parsed_phis() const;

  /// Sets `section.key` from its text form; throws ConfigError.
  void set(const std::string& dotted_key, const std::string& value);
  /// Reads INI text; unknown sections or keys are errors.
  void load(std::istream& in);
  void load_file(const std::string& path);
  /// Canonical INI with every default made explicit.
  std::string resolved_text() const;
};

/// Builds the synthetic model named by the preset; the covariance structure
/// is drawn from the master seed.
SyntheticModel build_model(const ExperimentConfig& cfg);

struct PhiRun {
  std::string phi;
  Eigen::VectorXd params;
  std::vector<double> trajectory;
  double test_auc = 0.0;
  double train_criterion_final = 0.0;
  int stopped_at = 0;
  std::vector<double> grid_beta;  // test ROC on the evaluation grid
  double distance_to_optimal = 0.0;
  bool failed = false;
  std::string error;
};

struct Replication {
  int index = 0;
  std::vector<PhiRun> runs;  // one per phi, in config order
};

struct PhiAggregate {
  std::string phi;
  std::vector<double> mean_beta;
  std::vector<double> std_beta;
  std::size_t best = 0;
  std::size_t worst = 0;
  double mean_test_auc = 0.0;
  int succeeded = 0;
};

struct ExperimentResult {
  std::vector<Replication> replications;
  std::vector<double> grid_alpha;
  std::vector<double> optimal_beta;
  double auc_star = 0.0;
  std::vector<PhiAggregate> aggregates;
  int failed_runs = 0;
};

/// Runs every replication and aggregates; writes nothing.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes config.resolved.txt, replications.csv, roc_grid.csv and
/// trajectory.csv (and SVG charts when cfg.svg) into cfg.output.
void write_experiment(const ExperimentConfig& cfg, const ExperimentResult& result);

struct RateRow {
  int seed_index = 0;
  long long pooled_size = 0;
  double deviation = 0.0;
};

struct RateResult {
  std::vector<RateRow> rows;
  std::vector<double> slopes;  // one per seed
  double median_slope = 0.0;
};

/// For each seed and each N of the ladder, the largest |(1/n) W_phi_hat(s) -
/// W_phi(s)| over a fixed set of random linear scorers.
RateResult rate_experiment(const ExperimentConfig& cfg);
void write_rate(const ExperimentConfig& cfg, const RateResult& result);

/// Least-squares slope of log(y) on log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wrank
