#pragma once

// Seeded Gaussian location and scale models with their optimal scorers.
//
// Location: X ~ N(mu_X, Sigma), Y ~ N(mu_Y, Sigma), mu_X = (1 + eps) mu_Y.
//           Optimal linear scorer theta* = Sigma^{-1} (mu_X - mu_Y), and
//           ROC*(a) = 1 - Phi(Phi^{-1}(1 - a) - m), m the Mahalanobis
//           distance between the means.
// Scale:    X ~ N(0, I + (eps/d) H), Y ~ N(0, I).
//           M* = Sigma_X^{-1} - I; the optimal scorer is z -> -<z, M* z>,
//           increasing in the likelihood ratio.

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "wrank/scoring_model.hpp"

namespace wrank {

struct LocationConfig {
  Eigen::VectorXd mu_y;
  double epsilon = 0.0;
  Eigen::MatrixXd sigma;

  Eigen::Index dim() const noexcept { return mu_y.size(); }
  Eigen::VectorXd mu_x() const { return (1.0 + epsilon) * mu_y; }
  void validate() const;
};

struct ScaleConfig {
  Eigen::Index d = 1;
  double epsilon = 0.0;
  Eigen::MatrixXd h;

  Eigen::MatrixXd sigma_x() const;
  /// Throws unless Sigma_X is symmetric with eigenvalues in [0.5, 1.5].
  void validate() const;
};

/// Unit-norm all-ones mean.
Eigen::VectorXd default_mu_y(Eigen::Index d);
/// I + 0.4 S / ||S||_2 for a seeded random symmetric S; eigenvalues in [0.6, 1.4].
Eigen::MatrixXd default_location_sigma(Eigen::Index d, std::uint64_t seed);
/// Seeded symmetric H with standard normal entries, shrunk when needed so that
/// I + (eps/d) H has eigenvalues in [0.55, 1.45].
Eigen::MatrixXd default_scale_h(Eigen::Index d, double epsilon, std::uint64_t seed);

LocationConfig make_location(Eigen::Index d, double epsilon, std::uint64_t seed);
ScaleConfig make_scale(Eigen::Index d, double epsilon, std::uint64_t seed);

/// Rows i.i.d. N(mean, sigma). Throws NotPositiveDefinite when the Cholesky
/// factorization fails.
Eigen::MatrixXd sample_gaussian(const Eigen::VectorXd& mean, const Eigen::MatrixXd& sigma,
                                Eigen::Index count, std::uint64_t seed);

Eigen::VectorXd optimal_theta_location(const LocationConfig& cfg);
/// Packed upper triangle of Sigma_X^{-1} - I. Requires Sigma_X positive
/// definite only.
Eigen::VectorXd optimal_theta_scale(const ScaleConfig& cfg);

/// sqrt((mu_X - mu_Y)^T Sigma^{-1} (mu_X - mu_Y)).
double mahalanobis_separation(const LocationConfig& cfg);

/// ROC of two unit-variance Gaussians whose means differ by `separation`:
/// 1 - Phi(Phi^{-1}(1 - alpha) - separation), extended by continuity to [0,1].
double gaussian_shift_roc(double separation, double alpha);

double optimal_roc_location(const LocationConfig& cfg, double alpha);
/// Phi(m / sqrt(2)).
double optimal_auc_location(const LocationConfig& cfg);

/// Standardized separation of the linear scorer theta under a location model:
/// theta^T (mu_X - mu_Y) / sqrt(theta^T Sigma theta).
double linear_scorer_separation(const LocationConfig& cfg, const Eigen::VectorXd& theta);

/// A named synthetic model: location or scale.
class SyntheticModel {
 public:
  explicit SyntheticModel(LocationConfig cfg) : config_(std::move(cfg)) {}
  explicit SyntheticModel(ScaleConfig cfg) : config_(std::move(cfg)) {}

  bool is_location() const noexcept { return config_.index() == 0; }
  const LocationConfig& location() const { return std::get<LocationConfig>(config_); }
  const ScaleConfig& scale() const { return std::get<ScaleConfig>(config_); }
  Eigen::Index dim() const;

  /// Scorer class matching the model: linear for location, quadscale for scale.
  ModelKind natural_scorer() const noexcept {
    return is_location() ? ModelKind::Linear : ModelKind::QuadraticScale;
  }
  /// Scorer increasing in the likelihood ratio: theta* for location, the
  /// quadratic form of -M* = I - Sigma_X^{-1} for scale.
  ScoringModel optimal_scorer() const;
  FeatureSample draw(Eigen::Index n, Eigen::Index m, std::uint64_t seed) const;

 private:
  std::variant<LocationConfig, ScaleConfig> config_;
};

/// Presets loc1|loc2|loc3 (eps 0.10/0.20/0.30) and scale1|scale2|scale3
/// (eps 0.70/0.80/0.90). Throws ConfigError for unknown names.
double preset_epsilon(std::string_view preset);
bool preset_is_location(std::string_view preset);

}  // namespace wrank
