#include "wrank/roceval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "wrank/error.hpp"

namespace wrank {
namespace {

constexpr double kEdgeTol = 1e-12;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

RocCurve::RocCurve(std::vector<RocPoint> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw InvalidInput("a ROC curve needs at least two points");
  const RocPoint& first = points_.front();
  const RocPoint& last = points_.back();
  if (std::abs(first.alpha) > kEdgeTol || std::abs(first.beta) > kEdgeTol ||
      std::abs(last.alpha - 1.0) > kEdgeTol || std::abs(last.beta - 1.0) > kEdgeTol) {
    throw InvalidInput("a ROC curve must start at (0,0) and end at (1,1)");
  }
  for (std::size_t k = 0; k < points_.size(); ++k) {
    const RocPoint& p = points_[k];
    if (!(p.alpha >= -kEdgeTol && p.alpha <= 1.0 + kEdgeTol && p.beta >= -kEdgeTol &&
          p.beta <= 1.0 + kEdgeTol)) {
      throw InvalidInput("ROC points must lie in the unit square");
    }
    if (k > 0 && (p.alpha < points_[k - 1].alpha || p.beta < points_[k - 1].beta)) {
      throw InvalidInput("ROC points must be nondecreasing in alpha and beta");
    }
  }
  points_.front() = {0.0, 0.0};
  points_.back() = {1.0, 1.0};
}

RocCurve RocCurve::diagonal() { return RocCurve({{0.0, 0.0}, {1.0, 1.0}}); }

RocCurve RocCurve::perfect() { return RocCurve({{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}); }

RocCurve RocCurve::from_function(const std::function<double(double)>& roc,
                                 std::size_t grid_size) {
  if (grid_size < 2) throw InvalidInput("ROC grid needs at least two points");
  std::vector<RocPoint> pts(grid_size);
  double prev = 0.0;
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double a = static_cast<double>(i) / static_cast<double>(grid_size - 1);
    double b = (i == 0) ? 0.0 : (i + 1 == grid_size ? 1.0 : clamp01(roc(a)));
    b = std::max(b, prev);
    pts[i] = {a, b};
    prev = b;
  }
  return RocCurve(std::move(pts));
}

double RocCurve::beta_at(double alpha) const {
  alpha = clamp01(alpha);
  auto it = std::upper_bound(points_.begin(), points_.end(), alpha,
                             [](double a, const RocPoint& p) { return a < p.alpha; });
  const RocPoint& lo = *(it - 1);
  if (lo.alpha == alpha || it == points_.end()) return lo.beta;
  const RocPoint& hi = *it;
  const double w = (alpha - lo.alpha) / (hi.alpha - lo.alpha);
  return lo.beta + w * (hi.beta - lo.beta);
}

double RocCurve::beta_left(double alpha) const {
  alpha = clamp01(alpha);
  auto it = std::lower_bound(points_.begin(), points_.end(), alpha,
                             [](const RocPoint& p, double a) { return p.alpha < a; });
  if (it == points_.end()) return points_.back().beta;
  if (it->alpha == alpha || it == points_.begin()) return it->beta;
  const RocPoint& lo = *(it - 1);
  const RocPoint& hi = *it;
  const double w = (alpha - lo.alpha) / (hi.alpha - lo.alpha);
  return lo.beta + w * (hi.beta - lo.beta);
}

double RocCurve::auc() const {
  double area = 0.0;
  for (std::size_t k = 1; k < points_.size(); ++k) {
    area += (points_[k].alpha - points_[k - 1].alpha) *
            (points_[k].beta + points_[k - 1].beta) * 0.5;
  }
  return area;
}

void RocCurve::write_csv(std::ostream& out) const {
  out << "alpha,beta\n";
  char line[64];
  for (const RocPoint& p : points_) {
    std::snprintf(line, sizeof(line), "%.6f,%.6f\n", p.alpha, p.beta);
    out << line;
  }
}

RocCurve RocCurve::read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "alpha,beta") {
    throw InvalidInput("ROC CSV must start with the header 'alpha,beta'");
  }
  std::vector<RocPoint> pts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    RocPoint p;
    char comma = 0;
    if (!(row >> p.alpha >> comma >> p.beta) || comma != ',') {
      throw InvalidInput("malformed ROC CSV row: '" + line + "'");
    }
    pts.push_back(p);
  }
  return RocCurve(std::move(pts));
}

RocCurve empirical_roc(std::span<const double> pos_scores, std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty()) {
    throw InvalidInput("empirical ROC needs at least one positive and one negative score");
  }
  struct Item {
    double score;
    bool positive;
  };
  std::vector<Item> pooled;
  pooled.reserve(pos_scores.size() + neg_scores.size());
  for (double s : pos_scores) pooled.push_back({s, true});
  for (double s : neg_scores) pooled.push_back({s, false});
  std::sort(pooled.begin(), pooled.end(),
            [](const Item& a, const Item& b) { return a.score > b.score; });

  // Walk thresholds from the top score down in integer counts (negatives,
  // positives) so collinear points can be dropped exactly. A tied group with
  // both labels moves diagonally, which matches the 1/2 tie convention.
  std::vector<std::pair<std::int64_t, std::int64_t>> steps{{0, 0}};
  std::int64_t fp = 0, tp = 0;
  std::size_t i = 0;
  while (i < pooled.size()) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j].score == pooled[i].score) {
      (pooled[j].positive ? tp : fp) += 1;
      ++j;
    }
    const auto next = std::make_pair(fp, tp);
    if (steps.size() >= 2) {
      const auto& a = steps[steps.size() - 2];
      const auto& b = steps.back();
      const std::int64_t cross =
          (b.first - a.first) * (next.second - b.second) - (b.second - a.second) * (next.first - b.first);
      if (cross == 0) steps.pop_back();
    }
    steps.push_back(next);
    i = j;
  }

  const double m = static_cast<double>(neg_scores.size());
  const double n = static_cast<double>(pos_scores.size());
  std::vector<RocPoint> pts;
  pts.reserve(steps.size());
  for (const auto& [f, t] : steps) pts.push_back({static_cast<double>(f) / m, static_cast<double>(t) / n});
  return RocCurve(std::move(pts));
}

double empirical_auc(std::span<const double> pos_scores, std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty()) {
    throw InvalidInput("empirical AUC needs at least one positive and one negative score");
  }
  std::vector<double> neg(neg_scores.begin(), neg_scores.end());
  std::sort(neg.begin(), neg.end());
  double concordant = 0.0;
  for (double x : pos_scores) {
    const auto lo = std::lower_bound(neg.begin(), neg.end(), x);
    const auto hi = std::upper_bound(lo, neg.end(), x);
    concordant += static_cast<double>(lo - neg.begin()) + 0.5 * static_cast<double>(hi - lo);
  }
  return concordant / (static_cast<double>(pos_scores.size()) * static_cast<double>(neg.size()));
}

double sup_distance(const RocCurve& c1, const RocCurve& c2) {
  std::vector<double> alphas;
  for (const RocPoint& p : c1.points()) alphas.push_back(p.alpha);
  for (const RocPoint& p : c2.points()) alphas.push_back(p.alpha);
  for (int k = 0; k <= 1000; ++k) alphas.push_back(k / 1000.0);
  double best = 0.0;
  for (double a : alphas) {
    best = std::max(best, std::abs(c1.beta_at(a) - c2.beta_at(a)));
    best = std::max(best, std::abs(c1.beta_left(a) - c2.beta_left(a)));
  }
  return best;
}

double l1_distance_to_optimal(const RocCurve& c, const RocCurve& c_star) {
  std::vector<double> alphas;
  for (const RocPoint& p : c.points()) alphas.push_back(p.alpha);
  for (const RocPoint& p : c_star.points()) alphas.push_back(p.alpha);
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  struct Piece {
    double width, left, right;
  };
  std::vector<Piece> pieces;
  bool dominated = true;
  for (std::size_t k = 1; k < alphas.size(); ++k) {
    const double a = alphas[k - 1];
    const double b = alphas[k];
    const Piece piece{b - a, c_star.beta_at(a) - c.beta_at(a),
                      c_star.beta_left(b) - c.beta_left(b)};
    if (piece.left < -kEdgeTol || piece.right < -kEdgeTol) dominated = false;
    pieces.push_back(piece);
  }

  double total = 0.0;
  for (const Piece& p : pieces) {
    if (dominated) {
      total += p.width * 0.5 * (p.left + p.right);
    } else if (p.left * p.right >= 0.0) {
      total += p.width * 0.5 * (std::abs(p.left) + std::abs(p.right));
    } else {
      const double l = std::abs(p.left), r = std::abs(p.right);
      total += p.width * 0.5 * (l * l + r * r) / (l + r);
    }
  }
  return total;
}

double w_phi_from_roc(const std::function<double(double)>& roc, const ScoreGen& phi, double p,
                      std::size_t grid_size) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("class proportion p must lie in (0,1)");
  if (grid_size < 2) throw InvalidInput("quadrature grid needs at least two points");
  const std::size_t cells = grid_size - 1;
  const double width = 1.0 / static_cast<double>(cells);

  auto inner = [&](double a) {
    return clamp01(p * (1.0 - roc(a)) + (1.0 - p) * (1.0 - a));
  };

  double int_phi = 0.0;
  double int_roc = 0.0;
  if (phi.singular_at_endpoints()) {
    for (std::size_t k = 0; k < cells; ++k) {
      const double a = (static_cast<double>(k) + 0.5) * width;
      int_phi += phi.value(a);
      int_roc += phi.value(inner(a));
    }
    int_phi *= width;
    int_roc *= width;
  } else {
    for (std::size_t k = 0; k <= cells; ++k) {
      const double a = static_cast<double>(k) * width;
      const double w = (k == 0 || k == cells) ? 0.5 : 1.0;
      int_phi += w * phi.value(a);
      int_roc += w * phi.value(inner(a));
    }
    int_phi *= width;
    int_roc *= width;
  }
  return int_phi / p - (1.0 - p) / p * int_roc;
}

double w_phi_from_roc(const RocCurve& c, const ScoreGen& phi, double p, std::size_t grid_size) {
  return w_phi_from_roc([&c](double a) { return c.beta_at(a); }, phi, p, grid_size);
}

SupNorms sup_norms_on_grid(const ScoreGen& phi) {
  if (!phi.differentiable()) {
    throw Unsupported("the penalty needs a twice differentiable phi; " + phi.to_string() +
                      " is not");
  }
  if (phi.singular_at_endpoints()) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {inf, inf, inf};
  }
  SupNorms norms;
  for (int k = 0; k <= 1000; ++k) {
    const double u = k / 1000.0;
    norms.value = std::max(norms.value, std::abs(phi.value(u)));
    norms.first = std::max(norms.first, std::abs(phi.derivative(u)));
    norms.second = std::max(norms.second, std::abs(phi.second_derivative(u)));
  }
  return norms;
}

double penalty(long long pooled_size, double p, int k, double vc_dim, const SupNorms& norms,
               double b1) {
  if (pooled_size < 1) throw InvalidInput("penalty needs N >= 1");
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("class proportion p must lie in (0,1)");
  if (k < 1) throw InvalidInput("model index k must be >= 1");
  if (!(vc_dim > 0.0)) throw InvalidInput("VC dimension must be positive");
  const double n = static_cast<double>(pooled_size);
  const double c = 6.0 * (norms.value * norms.value + 9.0 * norms.first * norms.first +
                          9.0 * norms.second * norms.second);
  const double complexity = b1 * std::sqrt(vc_dim / (p * n));
  if (k == 1) return complexity;
  return complexity + std::sqrt(2.0 * c * std::log(static_cast<double>(k)) / (p * p * n));
}

double penalty(long long pooled_size, double p, int k, double vc_dim, const ScoreGen& phi,
               double b1) {
  return penalty(pooled_size, p, k, vc_dim, sup_norms_on_grid(phi), b1);
}

std::size_t select_model(std::span<const double> criteria, std::span<const double> penalties) {
  if (criteria.empty() || criteria.size() != penalties.size()) {
    throw InvalidInput("model selection needs matching, nonempty criteria and penalties");
  }
  std::size_t best = 0;
  double best_value = criteria[0] - penalties[0];
  for (std::size_t k = 1; k < criteria.size(); ++k) {
    const double v = criteria[k] - penalties[k];
    if (v > best_value) {
      best = k;
      best_value = v;
    }
  }
  return best;
}

std::size_t select_model(std::span<const Candidate> candidates, long long pooled_size, double p,
                         const ScoreGen& phi, double b1) {
  if (candidates.empty()) throw InvalidInput("model selection needs at least one candidate");
  const SupNorms norms = sup_norms_on_grid(phi);
  std::vector<double> crit, pen;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    crit.push_back(candidates[k].criterion);
    pen.push_back(penalty(pooled_size, p, static_cast<int>(k + 1), candidates[k].vc_dim, norms, b1));
  }
  return select_model(crit, pen);
}

CurveAverage average_curves(std::span<const RocCurve> curves, std::size_t grid_size,
                            const RocCurve& reference, CurveMetric metric) {
  if (curves.empty()) throw InvalidInput("average_curves needs at least one curve");
  if (grid_size < 2) throw InvalidInput("averaging grid needs at least two points");
  CurveAverage out;
  const double count = static_cast<double>(curves.size());
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double a = static_cast<double>(i) / static_cast<double>(grid_size - 1);
    std::vector<double> betas;
    betas.reserve(curves.size());
    for (const RocCurve& c : curves) betas.push_back(c.beta_at(a));
    double mean = 0.0;
    for (double b : betas) mean += b;
    mean /= count;
    double var = 0.0;
    for (double b : betas) var += (b - mean) * (b - mean);
    out.alpha.push_back(a);
    out.mean.push_back(mean);
    out.stddev.push_back(std::sqrt(var / count));
  }

  double best = std::numeric_limits<double>::infinity();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const double d = metric == CurveMetric::Sup ? sup_distance(curves[k], reference)
                                                : l1_distance_to_optimal(curves[k], reference);
    if (d < best) {
      best = d;
      out.best = k;
    }
    if (d > worst) {
      worst = d;
      out.worst = k;
    }
  }
  return out;
}

}  // namespace wrank
