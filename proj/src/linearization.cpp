#include "wrank/linearization.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "wrank/error.hpp"
#include "wrank/normal.hpp"
#include "wrank/random.hpp"

namespace wrank {

NormalDistribution::NormalDistribution(double mean, double sd) : mean_(mean), sd_(sd) {
  if (!std::isfinite(mean) || !(sd > 0.0) || !std::isfinite(sd)) {
    throw InvalidInput("normal distribution needs a finite mean and a positive sd");
  }
}

double NormalDistribution::cdf(double x) const { return normal::cdf((x - mean_) / sd_); }

double NormalDistribution::pdf(double x) const { return normal::pdf((x - mean_) / sd_) / sd_; }

std::vector<double> NormalDistribution::sample(std::size_t count, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(mean_, sd_);
  std::vector<double> out(count);
  for (double& v : out) v = dist(rng);
  return out;
}

void KnownUnivariatePair::validate() const {
  if (!(p > 0.0 && p < 1.0)) throw InvalidInput("mixture weight p must lie in (0,1)");
}

namespace {

// Returns (P_order(x), P_order'(x)).
std::pair<double, double> legendre(int order, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= order; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, order * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussLegendre::GaussLegendre(int order) {
  if (order < 1) throw InvalidInput("Gauss-Legendre order must be >= 1");
  nodes.resize(static_cast<std::size_t>(order));
  weights.resize(static_cast<std::size_t>(order));
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [value, slope] = legendre(order, x);
      const double step = value / slope;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double slope = legendre(order, x).second;
    const double w = 2.0 / ((1.0 - x * x) * slope * slope);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(order - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(order - 1 - i)] = w;
  }
}

namespace {

class HajekIntegrals {
 public:
  HajekIntegrals(const KnownUnivariatePair& pair, const ScoreGen& phi)
      : pair_(pair), phi_(phi), rule_(kHajekQuadratureOrder) {}

  template <class F>
  double integrate(double a, double b, F&& f) const {
    if (!(b > a)) return 0.0;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (std::size_t k = 0; k < rule_.nodes.size(); ++k) {
      acc += rule_.weights[k] * f(mid + half * rule_.nodes[k]);
    }
    return acc * half;
  }

  /// int_t^inf phi'(F(u)) dG(u)
  double tail(double t) const {
    const double a = std::max(t, pair_.g.lower());
    const double b = pair_.g.upper();
    return integrate(a, b, [&](double u) {
      return phi_.derivative(clamp_unit(pair_.mixture_cdf(u))) * pair_.g.pdf(u);
    });
  }

  double expected_tail_under_g() const {
    return integrate(pair_.g.lower(), pair_.g.upper(),
                     [&](double t) { return tail(t) * pair_.g.pdf(t); });
  }

  double expected_tail_under_h() const {
    return integrate(pair_.h.lower(), pair_.h.upper(),
                     [&](double t) { return tail(t) * pair_.h.pdf(t); });
  }

 private:
  static double clamp_unit(double v) { return std::min(std::max(v, 0.0), 1.0); }

  const KnownUnivariatePair& pair_;
  const ScoreGen& phi_;
  GaussLegendre rule_;
};

HajekComponents components_with(const PooledSample& sample, const KnownUnivariatePair& pair,
                                const ScoreGen& phi, const HajekIntegrals& integrals,
                                double expected_tail_g, double expected_tail_h) {
  HajekComponents c;
  c.n = sample.n();
  c.m = sample.m();
  const double n = static_cast<double>(c.n);
  const double m = static_cast<double>(c.m);
  const double pool = n + m;

  c.statistic = linear_rank_statistic(sample, phi);

  double w = 0.0;
  for (double x : sample.positives) {
    w += phi.value(std::min(std::max(pair.mixture_cdf(x), 0.0), 1.0));
  }
  c.w_hat = w / n;

  double tail_x = 0.0;
  for (double x : sample.positives) tail_x += integrals.tail(x);
  double tail_y = 0.0;
  for (double y : sample.negatives) tail_y += integrals.tail(y);

  c.v_x = (n - 1.0) / (pool + 1.0) * tail_x;
  c.v_y = n / (pool + 1.0) * tail_y;
  c.expected_v_x = (n - 1.0) / (pool + 1.0) * n * expected_tail_g;
  c.expected_v_y = n / (pool + 1.0) * m * expected_tail_h;
  c.remainder = c.statistic - n * c.w_hat - c.centered_v_x() - c.centered_v_y();
  return c;
}

void require_derivative(const ScoreGen& phi) {
  if (!phi.differentiable()) {
    throw Unsupported("the linearization needs a differentiable phi; " + phi.to_string() +
                      " is not");
  }
}

}  // namespace

HajekComponents hajek_components(const PooledSample& sample, const KnownUnivariatePair& pair,
                                 const ScoreGen& phi) {
  sample.validate();
  pair.validate();
  require_derivative(phi);
  const HajekIntegrals integrals(pair, phi);
  return components_with(sample, pair, phi, integrals, integrals.expected_tail_under_g(),
                         integrals.expected_tail_under_h());
}

std::vector<RemainderScalingRow> remainder_scaling(const KnownUnivariatePair& pair,
                                                   const ScoreGen& phi,
                                                   const std::vector<long long>& pooled_sizes,
                                                   int replications, std::uint64_t seed) {
  pair.validate();
  require_derivative(phi);
  if (replications < 1) throw InvalidInput("remainder_scaling needs replications >= 1");
  for (std::size_t k = 1; k < pooled_sizes.size(); ++k) {
    if (pooled_sizes[k] <= pooled_sizes[k - 1]) {
      throw InvalidInput("remainder_scaling needs strictly increasing N values");
    }
  }

  const HajekIntegrals integrals(pair, phi);
  const double eg = integrals.expected_tail_under_g();
  const double eh = integrals.expected_tail_under_h();

  std::vector<RemainderScalingRow> rows;
  for (long long pool : pooled_sizes) {
    const auto n = static_cast<long long>(std::floor(pair.p * static_cast<double>(pool)));
    const long long m = pool - n;
    if (n < 1 || m < 1) {
      throw InvalidInput("N = " + std::to_string(pool) + " leaves an empty sample at p = " +
                         std::to_string(pair.p));
    }
    std::vector<double> remainders;
    for (int r = 0; r < replications; ++r) {
      const std::uint64_t s = derive_seed(seed, {static_cast<std::uint64_t>(pool),
                                                 static_cast<std::uint64_t>(r)});
      PooledSample sample{pair.g.sample(static_cast<std::size_t>(n), derive_seed(s, {0})),
                          pair.h.sample(static_cast<std::size_t>(m), derive_seed(s, {1}))};
      remainders.push_back(components_with(sample, pair, phi, integrals, eg, eh).remainder);
    }
    RemainderScalingRow row;
    row.pooled_size = pool;
    double abs_sum = 0.0, sum = 0.0;
    for (double v : remainders) {
      abs_sum += std::abs(v);
      sum += v;
    }
    const double count = static_cast<double>(remainders.size());
    row.mean_abs_remainder = abs_sum / count;
    row.mean_remainder = sum / count;
    double var = 0.0;
    for (double v : remainders) var += (v - row.mean_remainder) * (v - row.mean_remainder);
    row.stderr_remainder = count > 1 ? std::sqrt(var / (count - 1.0) / count) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

double remainder_ratio_slope(const std::vector<RemainderScalingRow>& rows) {
  if (rows.size() < 2) throw InvalidInput("a slope needs at least two N values");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = std::log(static_cast<double>(r.pooled_size));
    const double y = std::log(r.mean_abs_remainder / static_cast<double>(r.pooled_size));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(rows.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace wrank
