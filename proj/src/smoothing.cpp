#include "wrank/smoothing.hpp"

#include <cmath>

#include "wrank/error.hpp"
#include "wrank/normal.hpp"

namespace wrank {

void KernelSpec::validate() const {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw InvalidInput("kernel bandwidth must be positive and finite");
  }
}

double KernelSpec::density(double t) const { return normal::pdf(t); }

double KernelSpec::integrated(double t) const { return normal::cdf(t); }

double integrated_kernel(const KernelSpec& spec, double t) { return spec.integrated(t); }

double smoothed_ecdf(std::span<const double> pooled_scores, double t, const KernelSpec& spec) {
  spec.validate();
  if (pooled_scores.empty()) throw InvalidInput("smoothed_ecdf needs at least one score");
  double total = 0.0;
  for (double v : pooled_scores) total += spec.integrated((t - v) / spec.bandwidth);
  return total / static_cast<double>(pooled_scores.size());
}

double default_bandwidth(long long pooled_size, double scale) {
  if (pooled_size < 1) throw InvalidInput("default_bandwidth needs N >= 1");
  if (!(scale > 0.0)) throw InvalidInput("bandwidth scale must be positive");
  return scale * std::pow(static_cast<double>(pooled_size), -0.2);
}

SmoothedEvaluation evaluate_smoothed(const ScoringModel& model, const FeatureSample& data,
                                     const ScoreGen& phi, const KernelSpec& spec,
                                     bool with_gradient) {
  data.validate();
  spec.validate();
  if (with_gradient && !phi.differentiable()) {
    throw Unsupported("cannot differentiate the criterion: " + phi.to_string() +
                      " has no derivative");
  }

  const Eigen::Index n = data.n();
  const Eigen::Index m = data.m();
  const Eigen::Index total = n + m;
  const double h = spec.bandwidth;
  const double inv_n_pool = 1.0 / static_cast<double>(total);

  Eigen::VectorXd scores(total);
  scores.head(n) = model.score_rows(data.positives);
  scores.tail(m) = model.score_rows(data.negatives);

  Eigen::VectorXd cdf(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < total; ++k) acc += spec.integrated((scores(i) - scores(k)) / h);
    cdf(i) = acc * inv_n_pool;
  }

  SmoothedEvaluation out;
  double crit = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) crit += phi.value(cdf(i));
  out.criterion = crit / static_cast<double>(n);
  if (!with_gradient) return out;

  // grad = sum_i phi'(F_i) sum_k w_ik (g_i - g_k), w_ik = K((s_i - s_k)/h) / (N h).
  // With A_ik = phi'(F_i) w_ik, row sums r and column sums c:
  //   grad = sum_i r_i g_i - sum_k c_k g_k.
  Eigen::VectorXd row_sum = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd col_sum = Eigen::VectorXd::Zero(total);
  const double scale = inv_n_pool / h;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double outer = phi.derivative(cdf(i));
    for (Eigen::Index k = 0; k < total; ++k) {
      const double a = outer * scale * spec.density((scores(i) - scores(k)) / h);
      row_sum(i) += a;
      col_sum(k) += a;
    }
  }

  const Eigen::MatrixXd grad_pos = model.gradient_rows(data.positives);
  const Eigen::MatrixXd grad_neg = model.gradient_rows(data.negatives);
  out.gradient = (grad_pos.transpose() * (row_sum - col_sum.head(n)) -
                  grad_neg.transpose() * col_sum.tail(m)) /
                 static_cast<double>(n);
  return out;
}

double smoothed_criterion(const ScoringModel& model, const FeatureSample& data,
                          const ScoreGen& phi, const KernelSpec& spec) {
  return evaluate_smoothed(model, data, phi, spec, false).criterion;
}

Eigen::VectorXd criterion_gradient(const ScoringModel& model, const FeatureSample& data,
                                   const ScoreGen& phi, const KernelSpec& spec) {
  return evaluate_smoothed(model, data, phi, spec, true).gradient;
}

}  // namespace wrank
