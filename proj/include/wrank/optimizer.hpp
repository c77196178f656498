#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "wrank/scoregen.hpp"
#include "wrank/scoring_model.hpp"

namespace wrank {

/// Plain gradient ascent on the smoothed criterion:
///   theta <- theta + step_size * grad sum_i phi(F(s_theta(X_i)))
struct GaConfig {
  int iterations = 50;
  /// Defaults to 1 / sqrt(iterations).
  std::optional<double> step_size;
  /// Fixed bandwidth; defaults to bandwidth_scale * N^(-1/5).
  std::optional<double> bandwidth;
  double bandwidth_scale = 1.0;
  /// Stop once ||theta(t+1) - theta(t)|| falls below this; defaults to
  /// 1e-6 * (1 + ||theta(t)||).
  std::optional<double> stop_tolerance;
  bool record_trajectory = true;
  /// Rescale linear parameters to unit norm after every step.
  bool renormalize_linear = false;

  double resolved_step_size() const;
  double resolved_bandwidth(long long pooled_size) const;
  double resolved_tolerance(double theta_norm) const;
  void validate() const;
};

struct FitResult {
  ScoringModel model;
  /// Smoothed criterion (normalized by 1/n) at theta(0), ..., theta(stopped_at).
  std::vector<double> criterion_trajectory;
  int stopped_at = 0;
  double bandwidth = 0.0;
  double step_size = 0.0;
};

/// Standard-normal direction of unit norm drawn from `seed`.
Eigen::VectorXd default_initial_params(ModelKind kind, Eigen::Index dim, std::uint64_t seed);

FitResult fit(const FeatureSample& data, const ScoringModel& init, const ScoreGen& phi,
              const GaConfig& cfg);

/// Starts from default_initial_params(kind, d, seed).
FitResult fit(const FeatureSample& data, ModelKind kind, const ScoreGen& phi,
              const GaConfig& cfg, std::uint64_t seed);

}  // namespace wrank
