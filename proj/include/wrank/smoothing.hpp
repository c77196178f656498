#pragma once

// Kernel-smoothed empirical CDF and the smoothed empirical W_phi criterion.
//
// With a Gaussian kernel K and its integral kappa (the standard normal CDF),
// the pooled smoothed CDF of the scores v_1..v_N is
//
//   F(t) = (1/N) sum_k kappa((t - v_k) / h)
//
// and the smoothed criterion of a scorer s is (1/n) sum_i phi(F(s(X_i))). The
// pooled sum includes the self term k = i.

#include <Eigen/Dense>
#include <span>

#include "wrank/scoregen.hpp"
#include "wrank/scoring_model.hpp"

namespace wrank {

struct KernelSpec {
  double bandwidth = 1.0;

  void validate() const;
  /// K(t): standard normal density.
  double density(double t) const;
  /// kappa(t) = integral of K up to t.
  double integrated(double t) const;
};

double integrated_kernel(const KernelSpec& spec, double t);

double smoothed_ecdf(std::span<const double> pooled_scores, double t, const KernelSpec& spec);

/// scale * N^(-1/5).
double default_bandwidth(long long pooled_size, double scale = 1.0);

/// (1/n) sum_i phi(F(s(X_i))), F the smoothed pooled CDF of the scores.
double smoothed_criterion(const ScoringModel& model, const FeatureSample& data,
                          const ScoreGen& phi, const KernelSpec& spec);

/// Gradient of smoothed_criterion with respect to the packed parameters.
/// Throws Unsupported when phi has no derivative.
Eigen::VectorXd criterion_gradient(const ScoringModel& model, const FeatureSample& data,
                                   const ScoreGen& phi, const KernelSpec& spec);

struct SmoothedEvaluation {
  double criterion = 0.0;     // normalized by 1/n
  Eigen::VectorXd gradient;   // empty unless requested
};

/// Shares the smoothed-CDF pass between the criterion and its gradient.
SmoothedEvaluation evaluate_smoothed(const ScoringModel& model, const FeatureSample& data,
                                     const ScoreGen& phi, const KernelSpec& spec,
                                     bool with_gradient);

}  // namespace wrank
