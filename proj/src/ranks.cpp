#include "wrank/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wrank/error.hpp"

namespace wrank {

void PooledSample::validate() const {
  if (positives.empty() || negatives.empty()) {
    throw InvalidInput("pooled sample needs at least one positive and one negative score");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(positives.begin(), positives.end(), finite) ||
      !std::all_of(negatives.begin(), negatives.end(), finite)) {
    throw InvalidInput("pooled sample contains a non-finite score");
  }
}

std::vector<double> mid_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 (0-based) hold ranks i+1..j; their mean is (i+1+j)/2.
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

std::vector<double> rank_positives(const PooledSample& sample) {
  sample.validate();
  std::vector<double> pooled;
  pooled.reserve(sample.pooled_size());
  pooled.insert(pooled.end(), sample.positives.begin(), sample.positives.end());
  pooled.insert(pooled.end(), sample.negatives.begin(), sample.negatives.end());
  std::vector<double> ranks = mid_ranks(pooled);
  ranks.resize(sample.n());
  return ranks;
}

double pooled_ecdf(const PooledSample& sample, double t) {
  sample.validate();
  auto below = [t](double v) { return v <= t; };
  const auto count = std::count_if(sample.positives.begin(), sample.positives.end(), below) +
                     std::count_if(sample.negatives.begin(), sample.negatives.end(), below);
  return static_cast<double>(count) / static_cast<double>(sample.pooled_size());
}

double linear_rank_statistic(const PooledSample& sample, const ScoreGen& phi) {
  const std::vector<double> ranks = rank_positives(sample);
  const double denom = static_cast<double>(sample.pooled_size()) + 1.0;
  double total = 0.0;
  for (double r : ranks) total += phi.value(r / denom);
  return total;
}

double wilcoxon_statistic(const PooledSample& sample) {
  const std::vector<double> ranks = rank_positives(sample);
  return std::accumulate(ranks.begin(), ranks.end(), 0.0);
}

}  // namespace wrank
