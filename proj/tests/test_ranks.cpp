#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wrank/error.hpp"
#include "wrank/ranks.hpp"
#include "wrank/roceval.hpp"

using namespace wrank;

TEST_CASE("rank_positives on small samples") {
  CHECK(rank_positives({{0.9}, {0.1, 0.5}}) == std::vector<double>{3.0});
  CHECK(rank_positives({{0.1, 0.5}, {0.3}}) == std::vector<double>{1.0, 3.0});
  CHECK(rank_positives({{0.5}, {0.5}}) == std::vector<double>{1.5});
}

TEST_CASE("mid-ranks of tied groups") {
  const std::vector<double> v = {2.0, 1.0, 2.0, 2.0, 0.0};
  const auto r = mid_ranks(v);
  CHECK(r == std::vector<double>{4.0, 2.0, 4.0, 4.0, 1.0});
}

TEST_CASE("empty or non-finite samples are rejected") {
  CHECK_THROWS_AS(rank_positives({{}, {1.0}}), InvalidInput);
  CHECK_THROWS_AS(rank_positives({{1.0}, {}}), InvalidInput);
  CHECK_THROWS_AS(wilcoxon_statistic({{NAN}, {1.0}}), InvalidInput);
  CHECK_THROWS_AS(pooled_ecdf({{INFINITY}, {1.0}}, 0.0), InvalidInput);
}

TEST_CASE("pooled_ecdf") {
  CHECK(pooled_ecdf({{1.0}, {2.0}}, 1.5) == doctest::Approx(0.5));
  CHECK(pooled_ecdf({{1.0, 7.0}, {2.0}}, 100.0) == 1.0);
  CHECK(pooled_ecdf({{0.1, 0.5}, {0.3}}, 0.3) == doctest::Approx(2.0 / 3.0));
  CHECK(pooled_ecdf({{0.1, 0.5}, {0.3}}, 0.0) == 0.0);
}

TEST_CASE("linear_rank_statistic hand values") {
  CHECK(linear_rank_statistic({{2, 4}, {1, 3}}, ScoreGen::mww()) == doctest::Approx(1.2));
  CHECK(linear_rank_statistic({{3, 4}, {1, 2}}, ScoreGen::mww()) == doctest::Approx(1.4));
  CHECK(linear_rank_statistic({{3}, {1, 2}}, ScoreGen::pol(2)) == doctest::Approx(0.5625));
}

TEST_CASE("wilcoxon_statistic hand values") {
  CHECK(wilcoxon_statistic({{2, 4}, {1, 3}}) == 6.0);
  CHECK(wilcoxon_statistic({{3, 4}, {1, 2}}) == 7.0);
  CHECK(wilcoxon_statistic({{1}, {2}}) == 1.0);
}

TEST_CASE("ranks match the quadratic oracle, ties included") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coarse(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> pos, neg;
    for (int i = 0; i < 1 + trial % 13; ++i) pos.push_back(coarse(rng));
    for (int j = 0; j < 1 + trial % 7; ++j) neg.push_back(coarse(rng));
    const auto fast = rank_positives({pos, neg});
    const auto slow = oracle::brute_positive_ranks(pos, neg);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t k = 0; k < fast.size(); ++k) CHECK(fast[k] == slow[k]);
  }
}

TEST_CASE("pooled ranks lie in [1, N] and sum to N(N+1)/2") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v = oracle::normal_draws(rng, 1 + trial);
    const auto r = mid_ranks(v);
    double sum = 0.0;
    const double n = static_cast<double>(v.size());
    for (double x : r) {
      CHECK(x >= 1.0);
      CHECK(x <= n);
      sum += x;
    }
    CHECK(sum == n * (n + 1) / 2);
  }
}

TEST_CASE("wilcoxon identity with empirical AUC") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> size(1, 50);
  for (int trial = 0; trial < 1000; ++trial) {
    PooledSample s{oracle::normal_draws(rng, size(rng), 0.3), oracle::normal_draws(rng, size(rng))};
    const double n = s.n(), m = s.m();
    const double rhs = n * m * empirical_auc(s.positives, s.negatives) + n * (n + 1) / 2;
    CHECK(std::abs(wilcoxon_statistic(s) - rhs) < 1e-12);
  }
}

TEST_CASE("rank statistics are invariant under increasing maps") {
  std::mt19937_64 rng(14);
  const ScoreGen phi = ScoreGen::rtb(0.8);
  for (int trial = 0; trial < 20; ++trial) {
    PooledSample s{oracle::normal_draws(rng, 17), oracle::normal_draws(rng, 23)};
    PooledSample t = s;
    for (double& v : t.positives) v = std::exp(v);
    for (double& v : t.negatives) v = std::exp(v);
    CHECK(rank_positives(s) == rank_positives(t));
    CHECK(linear_rank_statistic(s, phi) == linear_rank_statistic(t, phi));
  }
}
