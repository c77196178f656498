#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>

namespace wrank {

/// Positive (n x d) and negative (m x d) feature samples, one row per instance.
struct FeatureSample {
  Eigen::MatrixXd positives;
  Eigen::MatrixXd negatives;

  Eigen::Index n() const noexcept { return positives.rows(); }
  Eigen::Index m() const noexcept { return negatives.rows(); }
  Eigen::Index dim() const noexcept { return positives.cols(); }

  void validate() const;
};

enum class ModelKind { Linear, QuadraticScale };

ModelKind parse_model_kind(std::string_view name);
std::string model_kind_name(ModelKind kind);
/// Number of free parameters: d for Linear, d(d+1)/2 for QuadraticScale.
Eigen::Index parameter_count(ModelKind kind, Eigen::Index dim);

/// A scoring function s_theta from R^d to R.
///
/// Linear:          s(z) = <theta, z>
/// QuadraticScale:  s(z) = <z, M z>, M symmetric, stored as its upper triangle
///                  packed row by row: (M11, M12, ..., M1d, M22, ..., Mdd).
class ScoringModel {
 public:
  static ScoringModel linear(Eigen::VectorXd theta);
  /// Symmetrizes `matrix` as (M + M^T) / 2.
  static ScoringModel quadratic_scale(const Eigen::MatrixXd& matrix);
  static ScoringModel from_packed(ModelKind kind, Eigen::Index dim, Eigen::VectorXd params);

  ModelKind kind() const noexcept { return kind_; }
  Eigen::Index dim() const noexcept { return dim_; }
  const Eigen::VectorXd& params() const noexcept { return params_; }
  ScoringModel with_params(Eigen::VectorXd params) const;

  /// Full symmetric matrix of a QuadraticScale model.
  Eigen::MatrixXd matrix() const;

  double score(const Eigen::Ref<const Eigen::VectorXd>& z) const;
  /// Gradient of score(z) with respect to the packed parameters.
  Eigen::VectorXd param_gradient(const Eigen::Ref<const Eigen::VectorXd>& z) const;

  /// Scores of every row of `rows`.
  Eigen::VectorXd score_rows(const Eigen::MatrixXd& rows) const;
  /// Row k holds param_gradient(rows.row(k)).
  Eigen::MatrixXd gradient_rows(const Eigen::MatrixXd& rows) const;

 private:
  ScoringModel(ModelKind kind, Eigen::Index dim, Eigen::VectorXd params)
      : kind_(kind), dim_(dim), params_(std::move(params)) {}
  void check_dim(Eigen::Index d) const;

  ModelKind kind_;
  Eigen::Index dim_;
  Eigen::VectorXd params_;
};

/// Packs the upper triangle of a symmetric matrix row by row.
Eigen::VectorXd pack_symmetric(const Eigen::MatrixXd& matrix);
Eigen::MatrixXd unpack_symmetric(const Eigen::VectorXd& packed, Eigen::Index dim);

}  // namespace wrank
