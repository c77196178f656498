#include "wrank/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "wrank/linearization.hpp"
#include "wrank/normal.hpp"
#include "wrank/optimizer.hpp"
#include "wrank/random.hpp"
#include "wrank/ranks.hpp"
#include "wrank/roceval.hpp"
#include "wrank/smoothing.hpp"
#include "wrank/synthdata.hpp"

namespace wrank {
namespace {

std::string fmt(const char* pattern, double v) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

PooledSample random_sample(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::normal_distribution<double> z;
  PooledSample s;
  for (std::size_t i = 0; i < n; ++i) s.positives.push_back(z(rng) + 0.5);
  for (std::size_t j = 0; j < m; ++j) s.negatives.push_back(z(rng));
  return s;
}

CheckOutcome wilcoxon_identity(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(1, 50);
  double worst = 0.0;
  for (int r = 0; r < 200; ++r) {
    const PooledSample s = random_sample(rng, size(rng), size(rng));
    const double n = s.n(), m = s.m();
    const double lhs = wilcoxon_statistic(s);
    const double rhs = n * m * empirical_auc(s.positives, s.negatives) + n * (n + 1) / 2;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {"wilcoxon-auc identity", worst < 1e-9, fmt("max |diff| = %.3g", worst)};
}

CheckOutcome rank_invariance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ScoreGen phi = ScoreGen::pol(3);
  bool ok = true;
  for (int r = 0; r < 50 && ok; ++r) {
    PooledSample s = random_sample(rng, 30, 40);
    const double before = linear_rank_statistic(s, phi);
    auto transform = [](double v) { return v * v * v + 2.0 * v - 1.0; };
    std::transform(s.positives.begin(), s.positives.end(), s.positives.begin(), transform);
    std::transform(s.negatives.begin(), s.negatives.end(), s.negatives.begin(), transform);
    ok = linear_rank_statistic(s, phi) == before;
  }
  return {"rank invariance", ok, ok ? "statistic unchanged" : "statistic changed"};
}

CheckOutcome gradient_fd(std::uint64_t seed) {
  const LocationConfig loc = make_location(4, 0.5, derive_seed(seed, {0}));
  const SyntheticModel model(loc);
  const FeatureSample data = model.draw(20, 25, derive_seed(seed, {1}));
  const KernelSpec spec{0.4};
  double worst = 0.0;
  for (const char* name : {"mww", "pol:q=3", "rtb:u0=0.9"}) {
    const ScoreGen phi = ScoreGen::parse(name);
    const ScoringModel sm =
        ScoringModel::linear(default_initial_params(ModelKind::Linear, 4, derive_seed(seed, {2})));
    const Eigen::VectorXd g = criterion_gradient(sm, data, phi, spec);
    Eigen::VectorXd fd(g.size());
    const double step = 1e-5;
    for (Eigen::Index k = 0; k < g.size(); ++k) {
      Eigen::VectorXd up = sm.params(), down = sm.params();
      up[k] += step;
      down[k] -= step;
      fd[k] = (smoothed_criterion(sm.with_params(up), data, phi, spec) -
               smoothed_criterion(sm.with_params(down), data, phi, spec)) /
              (2 * step);
    }
    worst = std::max(worst, (g - fd).lpNorm<Eigen::Infinity>() /
                                std::max(1e-12, fd.lpNorm<Eigen::Infinity>()));
  }
  return {"gradient vs finite differences", worst < 1e-4, fmt("max rel err = %.3g", worst)};
}

CheckOutcome w_phi_identity(std::uint64_t) {
  double worst = 0.0;
  for (double sep : {0.0, 0.5, 1.5}) {
    const auto roc = [sep](double a) { return gaussian_shift_roc(sep, a); };
    const RocCurve curve = RocCurve::from_function(roc, 2001);
    for (double p : {0.25, 0.5, 0.75}) {
      const double w = w_phi_from_roc(curve, ScoreGen::mww(), p);
      worst = std::max(worst, std::abs(w - (p / 2 + (1 - p) * curve.auc())));
    }
  }
  return {"w_phi(mww) = p/2 + (1-p) auc", worst < 2e-4, fmt("max |diff| = %.3g", worst)};
}

CheckOutcome optimal_roc_shape(std::uint64_t seed) {
  bool ok = true;
  for (const char* preset : {"loc1", "loc2", "loc3"}) {
    const LocationConfig loc = make_location(15, preset_epsilon(preset), derive_seed(seed, {1}));
    double prev_slope = std::numeric_limits<double>::infinity();
    double prev = 0.0;
    for (int i = 1; i <= 1000; ++i) {
      const double a = i / 1000.0;
      const double b = optimal_roc_location(loc, a);
      if (b < a - 1e-12) ok = false;
      const double slope = (b - prev) * 1000.0;
      if (slope > prev_slope + 1e-9) ok = false;
      prev_slope = slope;
      prev = b;
    }
  }
  return {"optimal roc dominates diagonal and is concave", ok, ok ? "loc1-3" : "violated"};
}

CheckOutcome scoregen_monotone(std::uint64_t) {
  bool ok = true;
  for (const char* name :
       {"mww", "pol:q=3", "rtb:u0=0.9", "localauc:u0=0.9", "logistic", "logrank", "median", "vdw"}) {
    const ScoreGen phi = ScoreGen::parse(name);
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 1; i < 1000; ++i) {
      const double v = phi.value(i / 1000.0);
      if (v < prev - 1e-12) ok = false;
      prev = v;
    }
  }
  return {"score-generating functions nondecreasing", ok, ok ? "all kinds" : "violated"};
}

CheckOutcome hajek_reconstruction(std::uint64_t seed) {
  const KnownUnivariatePair pair{NormalDistribution(0.5, 1.0), NormalDistribution(0.0, 1.0), 0.5};
  PooledSample s{pair.g.sample(100, derive_seed(seed, {0})),
                 pair.h.sample(100, derive_seed(seed, {1}))};
  const HajekComponents c = hajek_components(s, pair, ScoreGen::mww());
  const double residual = std::abs(c.reconstruct() - c.statistic);
  return {"hajek decomposition reconstructs", residual < 1e-10, fmt("residual = %.3g", residual)};
}

}  // namespace

std::vector<CheckOutcome> run_checks(std::uint64_t seed) {
  const std::vector<std::function<CheckOutcome(std::uint64_t)>> suites = {
      wilcoxon_identity, rank_invariance,   gradient_fd,         w_phi_identity,
      optimal_roc_shape, scoregen_monotone, hajek_reconstruction};
  std::vector<CheckOutcome> out;
  for (std::size_t k = 0; k < suites.size(); ++k) {
    try {
      out.push_back(suites[k](derive_seed(seed, {k})));
    } catch (const std::exception& e) {
      out.push_back({"suite " + std::to_string(k), false, e.what()});
    }
  }
  return out;
}

}  // namespace wrank
