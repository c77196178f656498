#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wrank/error.hpp"
#include "wrank/roceval.hpp"
#include "wrank/synthdata.hpp"

using namespace wrank;

TEST_CASE("gaussian sampling moments") {
  const Eigen::MatrixXd z = sample_gaussian(Eigen::Vector3d::Zero(), Eigen::Matrix3d::Identity(), 100000, 1);
  const Eigen::VectorXd mean = z.colwise().mean();
  for (Eigen::Index c = 0; c < 3; ++c) CHECK(std::abs(mean[c]) < 0.02);

  const Eigen::MatrixXd one = sample_gaussian(Eigen::Vector2d(1, 2), Eigen::Matrix2d::Identity(), 1, 5);
  CHECK(one.rows() == 1);
  CHECK(one.allFinite());

  const Eigen::MatrixXd w = sample_gaussian(Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Constant(1, 1, 4.0), 100000, 2);
  const double var = (w.array() - w.mean()).square().sum() / (w.rows() - 1);
  CHECK(var >= 3.8);
  CHECK(var <= 4.2);
}

TEST_CASE("sampling is seeded and rejects indefinite covariances") {
  const Eigen::Matrix2d s = (Eigen::Matrix2d() << 1, 0.3, 0.3, 1).finished();
  CHECK(sample_gaussian(Eigen::Vector2d::Zero(), s, 5, 9) == sample_gaussian(Eigen::Vector2d::Zero(), s, 5, 9));
  CHECK(sample_gaussian(Eigen::Vector2d::Zero(), s, 5, 9) != sample_gaussian(Eigen::Vector2d::Zero(), s, 5, 10));
  const Eigen::Matrix2d bad = (Eigen::Matrix2d() << 1, 2, 2, 1).finished();
  CHECK_THROWS_AS(sample_gaussian(Eigen::Vector2d::Zero(), bad, 5, 1), NotPositiveDefinite);
}

TEST_CASE("optimal location scorer") {
  LocationConfig a{Eigen::Vector2d(1, 0), 1.0, Eigen::Matrix2d::Identity()};
  CHECK(optimal_theta_location(a).isApprox(Eigen::Vector2d(1, 0)));
  LocationConfig b{Eigen::Vector2d(2, 3), 1.0, Eigen::Vector2d(2, 1).asDiagonal()};
  CHECK(optimal_theta_location(b).isApprox(Eigen::Vector2d(1, 3)));
  LocationConfig c{Eigen::Vector2d(2, 3), 0.0, Eigen::Matrix2d::Identity()};
  CHECK(optimal_theta_location(c).isZero());
}

TEST_CASE("optimal scale scorer") {
  CHECK(optimal_theta_scale(make_scale(4, 0.0, 3)).isZero());
  ScaleConfig one{1, 1.0, Eigen::MatrixXd::Ones(1, 1)};
  CHECK(optimal_theta_scale(one)[0] == doctest::Approx(-0.5));
  ScaleConfig three{3, 3.0, Eigen::MatrixXd::Identity(3, 3)};
  const Eigen::MatrixXd m = unpack_symmetric(optimal_theta_scale(three), 3);
  CHECK(m.isApprox(-0.5 * Eigen::MatrixXd::Identity(3, 3)));
}

TEST_CASE("optimal ROC closed form") {
  for (double a : {0.05, 0.3, 0.9}) CHECK(gaussian_shift_roc(0.0, a) == doctest::Approx(a));
  CHECK(std::abs(gaussian_shift_roc(10.0, 0.1) - 1.0) < 1e-6);
  CHECK(gaussian_shift_roc(1.0, 0.5) == doctest::Approx(0.8413).epsilon(1e-4));
  CHECK(gaussian_shift_roc(1.0, 0.5) == doctest::Approx(oracle::normal_cdf(1.0)));
  CHECK(gaussian_shift_roc(1.0, 0.0) == 0.0);
  CHECK(gaussian_shift_roc(1.0, 1.0) == 1.0);
}

TEST_CASE("optimal ROC dominates the diagonal and is concave") {
  for (const char* preset : {"loc1", "loc2", "loc3"}) {
    const LocationConfig loc = make_location(15, preset_epsilon(preset), 11);
    std::vector<double> b;
    for (int i = 1; i <= 999; ++i) {
      const double a = i / 1000.0;
      b.push_back(optimal_roc_location(loc, a));
      CHECK(b.back() >= a);
    }
    for (std::size_t i = 1; i + 1 < b.size(); ++i) CHECK(b[i + 1] - 2 * b[i] + b[i - 1] <= 1e-9);
  }
}

TEST_CASE("optimal ROC agrees with the empirical ROC of the optimal scorer") {
  const SyntheticModel model(make_location(15, 0.3, 12));
  const FeatureSample test = model.draw(100000, 100000, 13);
  const ScoringModel best = model.optimal_scorer();
  const Eigen::VectorXd pos = best.score_rows(test.positives);
  const Eigen::VectorXd neg = best.score_rows(test.negatives);
  const RocCurve emp = empirical_roc({pos.data(), 100000}, {neg.data(), 100000});
  double worst = 0.0;
  for (int i = 1; i <= 99; ++i) {
    const double a = i / 100.0;
    worst = std::max(worst, std::abs(emp.beta_at(a) - optimal_roc_location(model.location(), a)));
  }
  CHECK(worst < 0.02);
  CHECK(optimal_auc_location(model.location()) ==
        doctest::Approx(oracle::normal_cdf(mahalanobis_separation(model.location()) / std::sqrt(2.0))));
}

TEST_CASE("default structures") {
  CHECK(default_mu_y(4).norm() == doctest::Approx(1.0));
  const Eigen::MatrixXd sigma = default_location_sigma(15, 3);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  CHECK(eig.eigenvalues().minCoeff() >= 0.5);
  CHECK(eig.eigenvalues().maxCoeff() <= 1.5);
  for (double eps : {0.7, 0.8, 0.9, 5.0}) CHECK_NOTHROW(make_scale(15, eps, 4));
  ScaleConfig wide{1, 1.0, Eigen::MatrixXd::Ones(1, 1)};
  CHECK_THROWS_AS(wide.validate(), InvalidInput);
}

TEST_CASE("presets") {
  CHECK(preset_epsilon("loc1") == 0.1);
  CHECK(preset_epsilon("loc2") == 0.2);
  CHECK(preset_epsilon("loc3") == doctest::Approx(0.3));
  CHECK(preset_epsilon("scale1") == doctest::Approx(0.7));
  CHECK(preset_epsilon("scale3") == doctest::Approx(0.9));
  CHECK(preset_is_location("loc2"));
  CHECK(!preset_is_location("scale2"));
  CHECK_THROWS_AS(preset_epsilon("loc9"), ConfigError);
}

TEST_CASE("model draws are seeded") {
  const SyntheticModel model(make_scale(3, 0.8, 1));
  const FeatureSample a = model.draw(5, 6, 42), b = model.draw(5, 6, 42);
  CHECK(a.positives == b.positives);
  CHECK(a.negatives == b.negatives);
  CHECK(a.n() == 5);
  CHECK(a.m() == 6);
  CHECK(model.natural_scorer() == ModelKind::QuadraticScale);
}
