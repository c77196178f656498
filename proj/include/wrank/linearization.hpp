#pragma once

// Hajek-type linearization of a two-sample linear rank statistic for
// univariate data drawn from known distributions G (positives) and H
// (negatives):
//
//   W = n * W_hat + (V_X - E V_X) + (V_Y - E V_Y) + R
//
//   W_hat = (1/n) sum_i phi(F(x_i)),                    F = p G + (1-p) H
//   V_X   = (n-1)/(N+1) sum_i int_{x_i}^inf phi'(F(u)) dG(u)
//   V_Y   =  n   /(N+1) sum_j int_{y_j}^inf phi'(F(u)) dG(u)
//
// R is obtained as the residual of the identity.

#include <cstdint>
#include <vector>

#include "wrank/ranks.hpp"
#include "wrank/scoregen.hpp"

namespace wrank {

class NormalDistribution {
 public:
  NormalDistribution(double mean, double sd);
  double mean() const noexcept { return mean_; }
  double sd() const noexcept { return sd_; }
  double cdf(double x) const;
  double pdf(double x) const;
  /// Interval holding all but a negligible (< 1e-30) amount of mass.
  double lower() const noexcept { return mean_ - 12.0 * sd_; }
  double upper() const noexcept { return mean_ + 12.0 * sd_; }
  std::vector<double> sample(std::size_t count, std::uint64_t seed) const;

 private:
  double mean_;
  double sd_;
};

struct KnownUnivariatePair {
  NormalDistribution g;  // positives
  NormalDistribution h;  // negatives
  double p = 0.5;

  void validate() const;
  double mixture_cdf(double t) const { return p * g.cdf(t) + (1.0 - p) * h.cdf(t); }
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  explicit GaussLegendre(int order);
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline constexpr int kHajekQuadratureOrder = 201;

struct HajekComponents {
  double statistic = 0.0;   // exact sum_i phi(Rank(x_i)/(N+1))
  double w_hat = 0.0;
  double v_x = 0.0;
  double v_y = 0.0;
  double expected_v_x = 0.0;
  double expected_v_y = 0.0;
  double remainder = 0.0;
  std::size_t n = 0;
  std::size_t m = 0;

  double centered_v_x() const { return v_x - expected_v_x; }
  double centered_v_y() const { return v_y - expected_v_y; }
  /// n * w_hat + centered components + remainder; equals `statistic`.
  double reconstruct() const {
    return static_cast<double>(n) * w_hat + centered_v_x() + centered_v_y() + remainder;
  }
};

HajekComponents hajek_components(const PooledSample& sample, const KnownUnivariatePair& pair,
                                 const ScoreGen& phi);

struct RemainderScalingRow {
  long long pooled_size = 0;
  double mean_abs_remainder = 0.0;
  double mean_remainder = 0.0;
  double stderr_remainder = 0.0;
};

/// For every N, draws `replications` samples with n = floor(p N), m = N - n
/// and reports the mean (absolute) remainder.
std::vector<RemainderScalingRow> remainder_scaling(const KnownUnivariatePair& pair,
                                                   const ScoreGen& phi,
                                                   const std::vector<long long>& pooled_sizes,
                                                   int replications, std::uint64_t seed);

/// Least-squares slope of log(mean|R| / N) against log N.
double remainder_ratio_slope(const std::vector<RemainderScalingRow>& rows);

}  // namespace wrank
