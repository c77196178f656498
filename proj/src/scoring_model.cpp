#include "wrank/scoring_model.hpp"

#include "wrank/error.hpp"

namespace wrank {

void FeatureSample::validate() const {
  if (positives.rows() < 1 || negatives.rows() < 1) {
    throw InvalidInput("feature sample needs at least one positive and one negative row");
  }
  if (positives.cols() < 1 || positives.cols() != negatives.cols()) {
    throw InvalidInput("positive and negative features must share a dimension d >= 1");
  }
  if (!positives.allFinite() || !negatives.allFinite()) {
    throw InvalidInput("feature sample contains a non-finite entry");
  }
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "linear") return ModelKind::Linear;
  if (name == "quadscale") return ModelKind::QuadraticScale;
  throw InvalidInput("unknown scorer '" + std::string(name) +
                     "' (expected 'linear' or 'quadscale')");
}

std::string model_kind_name(ModelKind kind) {
  return kind == ModelKind::Linear ? "linear" : "quadscale";
}

Eigen::Index parameter_count(ModelKind kind, Eigen::Index dim) {
  return kind == ModelKind::Linear ? dim : dim * (dim + 1) / 2;
}

Eigen::VectorXd pack_symmetric(const Eigen::MatrixXd& matrix) {
  const Eigen::Index d = matrix.rows();
  Eigen::VectorXd packed(d * (d + 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) packed(k++) = matrix(i, j);
  }
  return packed;
}

Eigen::MatrixXd unpack_symmetric(const Eigen::VectorXd& packed, Eigen::Index dim) {
  if (packed.size() != dim * (dim + 1) / 2) {
    throw InvalidInput("packed symmetric parameter has the wrong length");
  }
  Eigen::MatrixXd m(dim, dim);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i; j < dim; ++j) {
      m(i, j) = packed(k);
      m(j, i) = packed(k);
      ++k;
    }
  }
  return m;
}

ScoringModel ScoringModel::linear(Eigen::VectorXd theta) {
  if (theta.size() < 1) throw InvalidInput("linear scorer needs d >= 1");
  const Eigen::Index d = theta.size();
  return ScoringModel(ModelKind::Linear, d, std::move(theta));
}

ScoringModel ScoringModel::quadratic_scale(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() < 1 || matrix.rows() != matrix.cols()) {
    throw InvalidInput("quadratic scorer needs a square d x d matrix");
  }
  const Eigen::MatrixXd sym = 0.5 * (matrix + matrix.transpose());
  return ScoringModel(ModelKind::QuadraticScale, matrix.rows(), pack_symmetric(sym));
}

ScoringModel ScoringModel::from_packed(ModelKind kind, Eigen::Index dim,
                                       Eigen::VectorXd params) {
  if (dim < 1) throw InvalidInput("scorer dimension must be >= 1");
  if (params.size() != parameter_count(kind, dim)) {
    throw InvalidInput("scorer parameter vector has length " +
                       std::to_string(params.size()) + ", expected " +
                       std::to_string(parameter_count(kind, dim)));
  }
  return ScoringModel(kind, dim, std::move(params));
}

ScoringModel ScoringModel::with_params(Eigen::VectorXd params) const {
  return from_packed(kind_, dim_, std::move(params));
}

Eigen::MatrixXd ScoringModel::matrix() const {
  if (kind_ != ModelKind::QuadraticScale) {
    throw InvalidInput("matrix() is only defined for quadratic scorers");
  }
  return unpack_symmetric(params_, dim_);
}

void ScoringModel::check_dim(Eigen::Index d) const {
  if (d != dim_) {
    throw InvalidInput("feature dimension " + std::to_string(d) +
                       " does not match scorer dimension " + std::to_string(dim_));
  }
}

double ScoringModel::score(const Eigen::Ref<const Eigen::VectorXd>& z) const {
  check_dim(z.size());
  if (kind_ == ModelKind::Linear) return params_.dot(z);
  double s = 0.0;
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < dim_; ++i) {
    s += params_(k++) * z(i) * z(i);
    for (Eigen::Index j = i + 1; j < dim_; ++j) s += 2.0 * params_(k++) * z(i) * z(j);
  }
  return s;
}

Eigen::VectorXd ScoringModel::param_gradient(const Eigen::Ref<const Eigen::VectorXd>& z) const {
  check_dim(z.size());
  if (kind_ == ModelKind::Linear) return z;
  Eigen::VectorXd g(params_.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < dim_; ++i) {
    g(k++) = z(i) * z(i);
    for (Eigen::Index j = i + 1; j < dim_; ++j) g(k++) = 2.0 * z(i) * z(j);
  }
  return g;
}

Eigen::VectorXd ScoringModel::score_rows(const Eigen::MatrixXd& rows) const {
  check_dim(rows.cols());
  if (kind_ == ModelKind::Linear) return rows * params_;
  const Eigen::MatrixXd m = matrix();
  return ((rows * m).array() * rows.array()).rowwise().sum();
}

Eigen::MatrixXd ScoringModel::gradient_rows(const Eigen::MatrixXd& rows) const {
  check_dim(rows.cols());
  if (kind_ == ModelKind::Linear) return rows;
  Eigen::MatrixXd g(rows.rows(), params_.size());
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    g.row(r) = param_gradient(rows.row(r).transpose()).transpose();
  }
  return g;
}

}  // namespace wrank
