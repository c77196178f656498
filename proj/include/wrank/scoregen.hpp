#pragma once

// Score-generating functions phi: [0,1] -> R used to weight normalized ranks.
//
// Text grammar accepted by ScoreGen::parse (case-insensitive kind names):
//
//   spec   := kind [ ':' param { ',' param } ]
//   param  := key '=' number
//
//   mww                               phi(u) = u
//   pol:q=3                           phi(u) = u^q, q a positive integer
//   rtb:u0=0.9,beta=50,lambda=50      SoftPlus_beta(u-u0) + u0 * Sigmoid_lambda(u-u0)
//   localauc:u0=0.9                   phi(u) = u * 1{u >= u0}
//   dcg:n=300,k=10                    phi(u) = c((n+1)u) * 1{u >= k/(n+1)}, c(i) = log2(1+i)
//   logistic                          phi(u) = 2*sqrt(3)*(u - 1/2)
//   logrank                           phi(u) = -log(1-u)
//   median                            phi(u) = sgn(u - 1/2)
//   vdw                               phi(u) = Phi^{-1}(u)

#include <string>
#include <string_view>
#include <vector>

namespace wrank {

enum class ScoreGenKind {
  Mww,
  Pol,
  Rtb,
  LocalAucHard,
  Dcg,
  Logistic,
  Logrank,
  Median,
  Vdw,
};

class ScoreGen {
 public:
  static constexpr double kDefaultRtbSlope = 50.0;

  static ScoreGen mww();
  static ScoreGen pol(int q);
  static ScoreGen rtb(double u0, double beta = kDefaultRtbSlope,
                      double lambda = kDefaultRtbSlope);
  static ScoreGen local_auc_hard(double u0);
  /// `discounts[i-1]` is c(i) for i = 1..N; must be nondecreasing and >= 0.
  static ScoreGen dcg(std::vector<double> discounts, int k);
  /// DCG with the default discount c(i) = log2(1 + i) for a pool of size n.
  static ScoreGen dcg_default(int n, int k);
  static ScoreGen logistic();
  static ScoreGen logrank();
  static ScoreGen median();
  static ScoreGen vdw();

  /// Parses the text grammar documented at the top of this header.
  static ScoreGen parse(std::string_view spec);

  ScoreGenKind kind() const noexcept { return kind_; }
  bool differentiable() const noexcept;
  /// True when phi is unbounded at an endpoint of [0,1] (Logrank, VdW).
  bool singular_at_endpoints() const noexcept;

  double value(double u) const;
  double derivative(double u) const;
  double second_derivative(double u) const;

  /// Canonical spec string; `parse(to_string())` reproduces the function.
  std::string to_string() const;
  /// Short label used in CSV outputs, e.g. "mww", "pol3", "rtb0.9".
  std::string label() const;

  int q() const noexcept { return q_; }
  double u0() const noexcept { return u0_; }
  double beta() const noexcept { return beta_; }
  double lambda() const noexcept { return lambda_; }
  int k() const noexcept { return k_; }
  const std::vector<double>& discounts() const noexcept { return discounts_; }

 private:
  explicit ScoreGen(ScoreGenKind kind) : kind_(kind) {}
  void check_unit_interval(double u) const;

  ScoreGenKind kind_;
  int q_ = 1;
  double u0_ = 0.5;
  double beta_ = kDefaultRtbSlope;
  double lambda_ = kDefaultRtbSlope;
  int k_ = 1;
  std::vector<double> discounts_;
};

}  // namespace wrank
