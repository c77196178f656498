#pragma once

// ROC curves, AUC, curve distances, the W_phi summary of a ROC curve and the
// complexity-penalized model selector.

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wrank/scoregen.hpp"

namespace wrank {

struct RocPoint {
  double alpha = 0.0;  // false positive rate
  double beta = 0.0;   // true positive rate
};

/// Broken line from (0,0) to (1,1) with nondecreasing alpha and beta. Equal
/// consecutive alphas encode a vertical segment; the curve then jumps from
/// the lower to the upper beta at that alpha.
class RocCurve {
 public:
  explicit RocCurve(std::vector<RocPoint> points);

  static RocCurve diagonal();
  static RocCurve perfect();
  /// Samples `roc` on a uniform grid of `grid_size` points over [0,1].
  static RocCurve from_function(const std::function<double(double)>& roc,
                                std::size_t grid_size);

  const std::vector<RocPoint>& points() const noexcept { return points_; }

  /// Upper value at alpha (right limit at a vertical segment).
  double beta_at(double alpha) const;
  /// Lower value at alpha (left limit at a vertical segment).
  double beta_left(double alpha) const;
  /// Trapezoidal area under the broken line.
  double auc() const;

  /// CSV with header "alpha,beta", one breakpoint per row, six decimals.
  void write_csv(std::ostream& out) const;
  static RocCurve read_csv(std::istream& in);

 private:
  std::vector<RocPoint> points_;
};

RocCurve empirical_roc(std::span<const double> pos_scores, std::span<const double> neg_scores);

/// (1/nm) sum_ij [1{y_j < x_i} + 1/2 1{y_j = x_i}], computed by sorting.
double empirical_auc(std::span<const double> pos_scores, std::span<const double> neg_scores);

/// max |beta_1 - beta_2| over every breakpoint alpha of both curves plus a
/// 1e-3 grid; both one-sided limits are compared at vertical segments.
double sup_distance(const RocCurve& c1, const RocCurve& c2);

/// Integral of (c_star - c) over [0,1] when c_star dominates c, otherwise the
/// integral of |c_star - c|. Exact for piecewise-linear curves.
double l1_distance_to_optimal(const RocCurve& c, const RocCurve& c_star);

enum class CurveMetric { Sup, L1 };

inline constexpr std::size_t kWPhiGridSize = 2001;

/// (1/p) int phi(u) du - ((1-p)/p) int phi(p (1 - ROC(a)) + (1-p)(1 - a)) da.
/// Composite trapezoid on `grid_size` points; for phi singular at the
/// endpoints (logrank, vdw) the composite midpoint rule on the same number
/// of cells is used instead so no endpoint is evaluated.
double w_phi_from_roc(const std::function<double(double)>& roc, const ScoreGen& phi, double p,
                      std::size_t grid_size = kWPhiGridSize);
double w_phi_from_roc(const RocCurve& c, const ScoreGen& phi, double p,
                      std::size_t grid_size = kWPhiGridSize);

struct SupNorms {
  double value = 0.0;
  double first = 0.0;
  double second = 0.0;
};

/// Sup norms of phi, phi', phi'' over a 1001-point grid of [0,1].
SupNorms sup_norms_on_grid(const ScoreGen& phi);

/// B1 sqrt(V_k / (p N)) + sqrt(2 C log k / (p^2 N)),
/// C = 6 (||phi||^2 + 9 ||phi'||^2 + 9 ||phi''||^2).
double penalty(long long pooled_size, double p, int k, double vc_dim, const SupNorms& norms,
               double b1 = 1.0);
double penalty(long long pooled_size, double p, int k, double vc_dim, const ScoreGen& phi,
               double b1 = 1.0);

struct Candidate {
  double vc_dim = 1.0;
  double criterion = 0.0;  // normalized empirical criterion (1/n) W
};

/// argmax_k criterion_k - pen(N, k); candidate k (0-based) is charged
/// pen(N, k + 1, V_k). Ties go to the smaller index.
std::size_t select_model(std::span<const Candidate> candidates, long long pooled_size, double p,
                         const ScoreGen& phi, double b1 = 1.0);
std::size_t select_model(std::span<const double> criteria, std::span<const double> penalties);

struct CurveAverage {
  std::vector<double> alpha;
  std::vector<double> mean;
  std::vector<double> stddev;  // population standard deviation
  std::size_t best = 0;
  std::size_t worst = 0;
};

/// Pointwise mean and spread on a uniform grid; best/worst minimize/maximize
/// the chosen distance to `reference`.
CurveAverage average_curves(std::span<const RocCurve> curves, std::size_t grid_size,
                            const RocCurve& reference, CurveMetric metric = CurveMetric::Sup);

}  // namespace wrank
