#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wrank/error.hpp"
#include "wrank/scoring_model.hpp"

using namespace wrank;

TEST_CASE("linear scores") {
  const ScoringModel e1 = ScoringModel::linear(Eigen::Vector2d(1, 0));
  CHECK(e1.score(Eigen::Vector2d(3, 0)) == 3.0);
  CHECK(ScoringModel::linear(Eigen::Vector2d(1, -1)).score(Eigen::Vector2d(2, 5)) == -3.0);
}

TEST_CASE("quadratic scores") {
  const ScoringModel id = ScoringModel::quadratic_scale(Eigen::Matrix2d::Identity());
  CHECK(id.score(Eigen::Vector2d(1, 2)) == 5.0);
}

TEST_CASE("construction symmetrizes the matrix") {
  Eigen::Matrix2d m;
  m << 1, 4, 0, 2;
  const ScoringModel q = ScoringModel::quadratic_scale(m);
  CHECK((q.matrix() - q.matrix().transpose()).norm() == 0.0);
  const Eigen::Vector2d z(0.3, -1.7);
  CHECK(q.score(z) == doctest::Approx(z.dot(m * z)));
}

TEST_CASE("parameter gradients") {
  const ScoringModel lin = ScoringModel::linear(Eigen::Vector2d(0.2, 0.4));
  CHECK(lin.param_gradient(Eigen::Vector2d(2, 5)) == Eigen::Vector2d(2, 5));
  const ScoringModel q = ScoringModel::quadratic_scale(Eigen::Matrix2d::Identity());
  CHECK(q.param_gradient(Eigen::Vector2d(1, 2)) == Eigen::Vector3d(1, 4, 4));
  CHECK(q.param_gradient(Eigen::Vector2d::Zero()).isZero());
  CHECK(lin.param_gradient(Eigen::Vector2d::Zero()).isZero());
}

TEST_CASE("parameter gradient matches finite differences") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 1 + trial % 5;
    const ModelKind kind = trial % 2 ? ModelKind::Linear : ModelKind::QuadraticScale;
    const Eigen::VectorXd params = oracle::normal_matrix(rng, parameter_count(kind, d), 1);
    const ScoringModel model = ScoringModel::from_packed(kind, d, params);
    const Eigen::VectorXd z = oracle::normal_matrix(rng, d, 1);
    const Eigen::VectorXd g = model.param_gradient(z);
    for (Eigen::Index k = 0; k < params.size(); ++k) {
      Eigen::VectorXd up = params, down = params;
      up[k] += 1e-6;
      down[k] -= 1e-6;
      const double fd = (model.with_params(up).score(z) - model.with_params(down).score(z)) / 2e-6;
      CHECK(std::abs(g[k] - fd) < 1e-8 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("packing round-trips") {
  Eigen::Matrix3d m;
  m << 1, 2, 3, 2, 4, 5, 3, 5, 6;
  const Eigen::VectorXd packed = pack_symmetric(m);
  CHECK(packed.size() == 6);
  CHECK(packed == (Eigen::VectorXd(6) << 1, 2, 3, 4, 5, 6).finished());
  CHECK(unpack_symmetric(packed, 3) == Eigen::MatrixXd(m));
}

TEST_CASE("row-wise helpers agree with single evaluations") {
  std::mt19937_64 rng(22);
  const Eigen::MatrixXd rows = oracle::normal_matrix(rng, 7, 3);
  const ScoringModel q = ScoringModel::from_packed(ModelKind::QuadraticScale, 3,
                                                   oracle::normal_matrix(rng, 6, 1));
  const Eigen::VectorXd s = q.score_rows(rows);
  const Eigen::MatrixXd g = q.gradient_rows(rows);
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    CHECK(s[r] == doctest::Approx(q.score(rows.row(r).transpose())));
    CHECK((g.row(r).transpose() - q.param_gradient(rows.row(r).transpose())).norm() < 1e-12);
  }
}

TEST_CASE("dimension mismatches and names") {
  const ScoringModel lin = ScoringModel::linear(Eigen::Vector2d(1, 1));
  CHECK_THROWS_AS(lin.score(Eigen::Vector3d(1, 1, 1)), InvalidInput);
  CHECK_THROWS_AS(ScoringModel::from_packed(ModelKind::QuadraticScale, 3, Eigen::VectorXd(5)),
                  InvalidInput);
  CHECK(parse_model_kind("linear") == ModelKind::Linear);
  CHECK(parse_model_kind("quadscale") == ModelKind::QuadraticScale);
  CHECK(model_kind_name(ModelKind::QuadraticScale) == "quadscale");
  CHECK_THROWS_AS(parse_model_kind("cubic"), InvalidInput);
  CHECK(parameter_count(ModelKind::QuadraticScale, 15) == 120);
}
