#include "wrank/synthdata.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "wrank/error.hpp"
#include "wrank/normal.hpp"
#include "wrank/random.hpp"

namespace wrank {
namespace {

Eigen::MatrixXd random_symmetric(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = normal(rng);
  }
  return 0.5 * (a + a.transpose());
}

double spectral_radius(const Eigen::MatrixXd& sym) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::LLT<Eigen::MatrixXd> cholesky(const Eigen::MatrixXd& sigma, const char* what) {
  if (sigma.rows() != sigma.cols() || sigma.rows() < 1) {
    throw InvalidInput(std::string(what) + " must be a square matrix");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite(std::string(what) + " is not positive definite");
  }
  return llt;
}

}  // namespace

void LocationConfig::validate() const {
  if (mu_y.size() < 1) throw InvalidInput("location model needs d >= 1");
  if (sigma.rows() != mu_y.size() || sigma.cols() != mu_y.size()) {
    throw InvalidInput("location covariance must be d x d");
  }
  if (!(epsilon >= 0.0)) throw InvalidInput("epsilon must be nonnegative");
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidInput("location covariance must be symmetric");
  }
  cholesky(sigma, "location covariance");
}

Eigen::MatrixXd ScaleConfig::sigma_x() const {
  return Eigen::MatrixXd::Identity(d, d) + (epsilon / static_cast<double>(d)) * h;
}

namespace {

void check_scale_shape(const ScaleConfig& cfg) {
  const Eigen::Index d = cfg.d;
  const Eigen::MatrixXd& h = cfg.h;
  if (d < 1) throw InvalidInput("scale model needs d >= 1");
  if (h.rows() != d || h.cols() != d) throw InvalidInput("scale perturbation H must be d x d");
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidInput("scale perturbation H must be symmetric");
  }
  if (!(cfg.epsilon >= 0.0)) throw InvalidInput("epsilon must be nonnegative");
}

}  // namespace

void ScaleConfig::validate() const {
  check_scale_shape(*this);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma_x(), Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < 0.5 || eig.eigenvalues().maxCoeff() > 1.5) {
    throw InvalidInput("Sigma_X eigenvalues must lie in [0.5, 1.5]");
  }
}

Eigen::VectorXd default_mu_y(Eigen::Index d) {
  return Eigen::VectorXd::Ones(d) / std::sqrt(static_cast<double>(d));
}

Eigen::MatrixXd default_location_sigma(Eigen::Index d, std::uint64_t seed) {
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  if (d == 1) return id;
  const Eigen::MatrixXd s = random_symmetric(d, seed);
  const double radius = spectral_radius(s);
  return radius > 0.0 ? Eigen::MatrixXd(id + (0.4 / radius) * s) : id;
}

Eigen::MatrixXd default_scale_h(Eigen::Index d, double epsilon, std::uint64_t seed) {
  Eigen::MatrixXd h = random_symmetric(d, seed);
  const double spread = (epsilon / static_cast<double>(d)) * spectral_radius(h);
  if (spread > 0.45) h *= 0.45 / spread;
  return h;
}

LocationConfig make_location(Eigen::Index d, double epsilon, std::uint64_t seed) {
  if (d < 1) throw InvalidInput("location model needs d >= 1");
  LocationConfig cfg{default_mu_y(d), epsilon, default_location_sigma(d, seed)};
  cfg.validate();
  return cfg;
}

ScaleConfig make_scale(Eigen::Index d, double epsilon, std::uint64_t seed) {
  if (d < 1) throw InvalidInput("scale model needs d >= 1");
  ScaleConfig cfg{d, epsilon, default_scale_h(d, epsilon, seed)};
  cfg.validate();
  return cfg;
}

Eigen::MatrixXd sample_gaussian(const Eigen::VectorXd& mean, const Eigen::MatrixXd& sigma,
                                Eigen::Index count, std::uint64_t seed) {
  if (count < 0) throw InvalidInput("sample count must be nonnegative");
  if (sigma.rows() != mean.size()) throw InvalidInput("mean and covariance dimensions differ");
  const Eigen::MatrixXd lower = cholesky(sigma, "covariance").matrixL();
  const Eigen::Index d = mean.size();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd z(count, d);
  for (Eigen::Index r = 0; r < count; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) z(r, c) = normal(rng);
  }
  Eigen::MatrixXd out = z * lower.transpose();
  out.rowwise() += mean.transpose();
  return out;
}

Eigen::VectorXd optimal_theta_location(const LocationConfig& cfg) {
  cfg.validate();
  return cholesky(cfg.sigma, "location covariance").solve(cfg.mu_x() - cfg.mu_y);
}

// Only needs Sigma_X positive definite, not the eigenvalue band of validate().
Eigen::VectorXd optimal_theta_scale(const ScaleConfig& cfg) {
  check_scale_shape(cfg);
  const Eigen::MatrixXd sx = cfg.sigma_x();
  const Eigen::MatrixXd inv =
      cholesky(sx, "Sigma_X").solve(Eigen::MatrixXd::Identity(cfg.d, cfg.d));
  Eigen::MatrixXd m = inv - Eigen::MatrixXd::Identity(cfg.d, cfg.d);
  return pack_symmetric(0.5 * (m + m.transpose()));
}

double mahalanobis_separation(const LocationConfig& cfg) {
  const Eigen::VectorXd diff = cfg.mu_x() - cfg.mu_y;
  const double q = diff.dot(optimal_theta_location(cfg));
  return std::sqrt(std::max(q, 0.0));
}

double gaussian_shift_roc(double separation, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("ROC argument must lie in [0,1]");
  if (alpha == 0.0) return 0.0;
  if (alpha == 1.0) return 1.0;
  return 1.0 - normal::cdf(normal::quantile(1.0 - alpha) - separation);
}

double optimal_roc_location(const LocationConfig& cfg, double alpha) {
  return gaussian_shift_roc(mahalanobis_separation(cfg), alpha);
}

double optimal_auc_location(const LocationConfig& cfg) {
  return normal::cdf(mahalanobis_separation(cfg) / std::numbers::sqrt2);
}

double linear_scorer_separation(const LocationConfig& cfg, const Eigen::VectorXd& theta) {
  if (theta.size() != cfg.dim()) throw InvalidInput("scorer dimension mismatch");
  const double spread = theta.dot(cfg.sigma * theta);
  if (!(spread > 0.0)) throw InvalidInput("scorer has zero variance under the model");
  return theta.dot(cfg.mu_x() - cfg.mu_y) / std::sqrt(spread);
}

Eigen::Index SyntheticModel::dim() const {
  return is_location() ? location().dim() : scale().d;
}

ScoringModel SyntheticModel::optimal_scorer() const {
  if (is_location()) return ScoringModel::linear(optimal_theta_location(location()));
  // log f_X/f_Y = -z'(Sigma_X^{-1} - I)z / 2 + const, so the quadratic form
  // that ranks like the likelihood ratio is the negated matrix.
  return ScoringModel::from_packed(ModelKind::QuadraticScale, scale().d,
                                   -optimal_theta_scale(scale()));
}

FeatureSample SyntheticModel::draw(Eigen::Index n, Eigen::Index m, std::uint64_t seed) const {
  const std::uint64_t pos_seed = derive_seed(seed, {1});
  const std::uint64_t neg_seed = derive_seed(seed, {2});
  if (is_location()) {
    const auto& c = location();
    return {sample_gaussian(c.mu_x(), c.sigma, n, pos_seed),
            sample_gaussian(c.mu_y, c.sigma, m, neg_seed)};
  }
  const auto& c = scale();
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(c.d);
  return {sample_gaussian(zero, c.sigma_x(), n, pos_seed),
          sample_gaussian(zero, Eigen::MatrixXd::Identity(c.d, c.d), m, neg_seed)};
}

double preset_epsilon(std::string_view preset) {
  if (preset == "loc1") return 0.10;
  if (preset == "loc2") return 0.20;
  if (preset == "loc3") return 0.30;
  if (preset == "scale1") return 0.70;
  if (preset == "scale2") return 0.80;
  if (preset == "scale3") return 0.90;
  throw ConfigError("unknown model preset '" + std::string(preset) + "'");
}

bool preset_is_location(std::string_view preset) {
  preset_epsilon(preset);
  return preset.substr(0, 3) == "loc";
}

}  // namespace wrank
