#include "wrank/optimizer.hpp"

#include <cmath>
#include <random>

#include "wrank/error.hpp"
#include "wrank/smoothing.hpp"

namespace wrank {

double GaConfig::resolved_step_size() const {
  return step_size.value_or(1.0 / std::sqrt(static_cast<double>(iterations)));
}

double GaConfig::resolved_bandwidth(long long pooled_size) const {
  return bandwidth ? *bandwidth : default_bandwidth(pooled_size, bandwidth_scale);
}

double GaConfig::resolved_tolerance(double theta_norm) const {
  return stop_tolerance ? *stop_tolerance : 1e-6 * (1.0 + theta_norm);
}

void GaConfig::validate() const {
  if (iterations < 1) throw InvalidInput("gradient ascent needs iterations >= 1");
  if (step_size && !(*step_size >= 0.0 && std::isfinite(*step_size))) {
    throw InvalidInput("step size must be finite and nonnegative");
  }
  if (bandwidth && !(*bandwidth > 0.0)) throw InvalidInput("bandwidth must be positive");
  if (!(bandwidth_scale > 0.0)) throw InvalidInput("bandwidth scale must be positive");
  if (stop_tolerance && !(*stop_tolerance >= 0.0)) {
    throw InvalidInput("stop tolerance must be nonnegative");
  }
}

Eigen::VectorXd default_initial_params(ModelKind kind, Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd theta(parameter_count(kind, dim));
  for (Eigen::Index k = 0; k < theta.size(); ++k) theta(k) = normal(rng);
  const double norm = theta.norm();
  return norm > 0.0 ? Eigen::VectorXd(theta / norm) : theta;
}

FitResult fit(const FeatureSample& data, const ScoringModel& init, const ScoreGen& phi,
              const GaConfig& cfg) {
  cfg.validate();
  data.validate();
  if (!phi.differentiable()) {
    throw Unsupported(phi.to_string() + " has no derivative and cannot drive gradient ascent");
  }
  if (init.dim() != data.dim()) {
    throw InvalidInput("initial scorer dimension does not match the features");
  }

  const KernelSpec kernel{cfg.resolved_bandwidth(data.n() + data.m())};
  const double eta = cfg.resolved_step_size();

  FitResult result{init, {}, 0, kernel.bandwidth, eta};
  Eigen::VectorXd theta = init.params();

  for (int t = 0; t < cfg.iterations; ++t) {
    const ScoringModel current = init.with_params(theta);
    const SmoothedEvaluation eval = evaluate_smoothed(current, data, phi, kernel, true);
    if (cfg.record_trajectory) result.criterion_trajectory.push_back(eval.criterion);
    if (!eval.gradient.allFinite()) {
      throw NumericalError("non-finite gradient at iteration " + std::to_string(t) +
                           "; the step size is likely too large");
    }

    // The ascent direction is the gradient of the rank sum, n times that of
    // the normalized criterion.
    Eigen::VectorXd next = theta + eta * static_cast<double>(data.n()) * eval.gradient;
    if (cfg.renormalize_linear && init.kind() == ModelKind::Linear) {
      const double norm = next.norm();
      if (norm > 0.0) next /= norm;
    }
    if (!next.allFinite()) {
      throw NumericalError("parameters diverged at iteration " + std::to_string(t) +
                           "; the step size is likely too large");
    }
    const double change = (next - theta).norm();
    const double tol = cfg.resolved_tolerance(theta.norm());
    theta = std::move(next);
    result.stopped_at = t + 1;
    if (change < tol) break;
  }

  result.model = init.with_params(theta);
  if (cfg.record_trajectory) {
    result.criterion_trajectory.push_back(
        smoothed_criterion(result.model, data, phi, kernel));
  }
  return result;
}

FitResult fit(const FeatureSample& data, ModelKind kind, const ScoreGen& phi,
              const GaConfig& cfg, std::uint64_t seed) {
  data.validate();
  const ScoringModel init =
      ScoringModel::from_packed(kind, data.dim(), default_initial_params(kind, data.dim(), seed));
  return fit(data, init, phi, cfg);
}

}  // namespace wrank
