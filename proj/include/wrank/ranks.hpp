#pragma once

// Ranks within a pooled two-sample dataset and exact two-sample linear rank
// statistics.
//
// Ranks run from 1 (smallest pooled score) to N = n + m (largest). Tied
// values share the mid-rank, the average of the integer ranks they occupy.

#include <span>
#include <vector>

#include "wrank/scoregen.hpp"

namespace wrank {

/// Univariate scores of the positive (n) and negative (m) instances.
struct PooledSample {
  std::vector<double> positives;
  std::vector<double> negatives;

  std::size_t n() const noexcept { return positives.size(); }
  std::size_t m() const noexcept { return negatives.size(); }
  std::size_t pooled_size() const noexcept { return positives.size() + negatives.size(); }

  /// Throws InvalidInput unless n >= 1, m >= 1 and every score is finite.
  void validate() const;
};

/// Mid-ranks of every value in `values` (1-based).
std::vector<double> mid_ranks(std::span<const double> values);

std::vector<double> rank_positives(const PooledSample& sample);

/// Right-continuous empirical CDF of the pooled scores: #{v <= t} / N.
double pooled_ecdf(const PooledSample& sample, double t);

/// Sum over positives of phi(Rank(X_i) / (N + 1)).
double linear_rank_statistic(const PooledSample& sample, const ScoreGen& phi);

/// Rank-sum Wilcoxon statistic: sum of the positive ranks.
double wilcoxon_statistic(const PooledSample& sample);

}  // namespace wrank
