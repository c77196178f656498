#include "wrank/scoregen.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "wrank/error.hpp"
#include "wrank/normal.hpp"

namespace wrank {
namespace {

constexpr double kRankSnap = 1e-9;

double softplus(double x, double beta) {
  const double bx = beta * x;
  if (bx > 0) return x + std::log1p(std::exp(-bx)) / beta;
  return std::log1p(std::exp(bx)) / beta;
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view key, std::string_view text) {
  double v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw InvalidInput("score-generating function: bad value for '" +
                       std::string(key) + "': '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  const double v = parse_number(key, text);
  if (v != std::floor(v)) {
    throw InvalidInput("score-generating function: '" + std::string(key) +
                       "' must be an integer");
  }
  return static_cast<int>(v);
}

std::string trim_lower(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

}  // namespace

ScoreGen ScoreGen::mww() { return ScoreGen(ScoreGenKind::Mww); }

ScoreGen ScoreGen::pol(int q) {
  if (q < 1) throw InvalidInput("pol: q must be a positive integer");
  ScoreGen g(ScoreGenKind::Pol);
  g.q_ = q;
  return g;
}

ScoreGen ScoreGen::rtb(double u0, double beta, double lambda) {
  if (!(u0 > 0.0 && u0 < 1.0)) throw InvalidInput("rtb: u0 must lie in (0,1)");
  if (!(beta > 0.0) || !(lambda > 0.0)) {
    throw InvalidInput("rtb: beta and lambda must be positive");
  }
  ScoreGen g(ScoreGenKind::Rtb);
  g.u0_ = u0;
  g.beta_ = beta;
  g.lambda_ = lambda;
  return g;
}

ScoreGen ScoreGen::local_auc_hard(double u0) {
  if (!(u0 > 0.0 && u0 < 1.0)) {
    throw InvalidInput("localauc: u0 must lie in (0,1)");
  }
  ScoreGen g(ScoreGenKind::LocalAucHard);
  g.u0_ = u0;
  return g;
}

ScoreGen ScoreGen::dcg(std::vector<double> discounts, int k) {
  if (discounts.empty()) throw InvalidInput("dcg: discount vector is empty");
  if (k < 1) throw InvalidInput("dcg: k must be >= 1");
  for (std::size_t i = 0; i < discounts.size(); ++i) {
    if (!std::isfinite(discounts[i]) || discounts[i] < 0.0 ||
        (i > 0 && discounts[i] < discounts[i - 1])) {
      throw InvalidInput("dcg: discounts must be finite, nonnegative and nondecreasing");
    }
  }
  ScoreGen g(ScoreGenKind::Dcg);
  g.discounts_ = std::move(discounts);
  g.k_ = k;
  return g;
}

ScoreGen ScoreGen::dcg_default(int n, int k) {
  if (n < 1) throw InvalidInput("dcg: pool size n must be >= 1");
  std::vector<double> c(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) c[static_cast<std::size_t>(i - 1)] = std::log2(1.0 + i);
  return dcg(std::move(c), k);
}

ScoreGen ScoreGen::logistic() { return ScoreGen(ScoreGenKind::Logistic); }
ScoreGen ScoreGen::logrank() { return ScoreGen(ScoreGenKind::Logrank); }
ScoreGen ScoreGen::median() { return ScoreGen(ScoreGenKind::Median); }
ScoreGen ScoreGen::vdw() { return ScoreGen(ScoreGenKind::Vdw); }

bool ScoreGen::differentiable() const noexcept {
  switch (kind_) {
    case ScoreGenKind::Mww:
    case ScoreGenKind::Pol:
    case ScoreGenKind::Rtb:
    case ScoreGenKind::Logistic:
    case ScoreGenKind::Logrank:
    case ScoreGenKind::Vdw:
      return true;
    case ScoreGenKind::LocalAucHard:
    case ScoreGenKind::Dcg:
    case ScoreGenKind::Median:
      return false;
  }
  return false;
}

bool ScoreGen::singular_at_endpoints() const noexcept {
  return kind_ == ScoreGenKind::Logrank || kind_ == ScoreGenKind::Vdw;
}

void ScoreGen::check_unit_interval(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw DomainError("score-generating function " + to_string() +
                      ": argument outside [0,1]");
  }
  if (kind_ == ScoreGenKind::Logrank && u >= 1.0) {
    throw DomainError("logrank: phi(u) = -log(1-u) is singular at u = 1");
  }
  if (kind_ == ScoreGenKind::Vdw && (u <= 0.0 || u >= 1.0)) {
    throw DomainError("vdw: Phi^{-1}(u) is singular at u = 0 and u = 1");
  }
}

double ScoreGen::value(double u) const {
  check_unit_interval(u);
  switch (kind_) {
    case ScoreGenKind::Mww:
      return u;
    case ScoreGenKind::Pol:
      return std::pow(u, q_);
    case ScoreGenKind::Rtb:
      return softplus(u - u0_, beta_) + u0_ * sigmoid(lambda_ * (u - u0_));
    case ScoreGenKind::LocalAucHard:
      return u >= u0_ ? u : 0.0;
    case ScoreGenKind::Dcg: {
      const double n = static_cast<double>(discounts_.size());
      const double pos = (n + 1.0) * u + kRankSnap;
      if (pos < static_cast<double>(k_)) return 0.0;
      const auto idx = static_cast<std::size_t>(std::clamp(std::floor(pos), 1.0, n));
      return discounts_[idx - 1];
    }
    case ScoreGenKind::Logistic:
      return 2.0 * std::sqrt(3.0) * (u - 0.5);
    case ScoreGenKind::Logrank:
      return -std::log1p(-u);
    case ScoreGenKind::Median:
      return u > 0.5 ? 1.0 : (u < 0.5 ? -1.0 : 0.0);
    case ScoreGenKind::Vdw:
      return normal::quantile(u);
  }
  return 0.0;
}

double ScoreGen::derivative(double u) const {
  if (!differentiable()) {
    throw Unsupported("score-generating function " + to_string() +
                      " has no derivative; it can be evaluated but not optimized");
  }
  check_unit_interval(u);
  switch (kind_) {
    case ScoreGenKind::Mww:
      return 1.0;
    case ScoreGenKind::Pol:
      return q_ * std::pow(u, q_ - 1);
    case ScoreGenKind::Rtb: {
      const double s = sigmoid(lambda_ * (u - u0_));
      return sigmoid(beta_ * (u - u0_)) + u0_ * lambda_ * s * (1.0 - s);
    }
    case ScoreGenKind::Logistic:
      return 2.0 * std::sqrt(3.0);
    case ScoreGenKind::Logrank:
      return 1.0 / (1.0 - u);
    case ScoreGenKind::Vdw:
      return 1.0 / normal::pdf(normal::quantile(u));
    default:
      return 0.0;
  }
}

double ScoreGen::second_derivative(double u) const {
  if (!differentiable()) {
    throw Unsupported("score-generating function " + to_string() +
                      " has no derivative");
  }
  check_unit_interval(u);
  switch (kind_) {
    case ScoreGenKind::Mww:
    case ScoreGenKind::Logistic:
      return 0.0;
    case ScoreGenKind::Pol:
      return q_ < 2 ? 0.0 : q_ * (q_ - 1) * std::pow(u, q_ - 2);
    case ScoreGenKind::Rtb: {
      const double sb = sigmoid(beta_ * (u - u0_));
      const double sl = sigmoid(lambda_ * (u - u0_));
      return beta_ * sb * (1.0 - sb) +
             u0_ * lambda_ * lambda_ * sl * (1.0 - sl) * (1.0 - 2.0 * sl);
    }
    case ScoreGenKind::Logrank:
      return 1.0 / ((1.0 - u) * (1.0 - u));
    case ScoreGenKind::Vdw: {
      const double z = normal::quantile(u);
      const double d = normal::pdf(z);
      return z / (d * d);
    }
    default:
      return 0.0;
  }
}

std::string ScoreGen::to_string() const {
  switch (kind_) {
    case ScoreGenKind::Mww:
      return "mww";
    case ScoreGenKind::Pol:
      return "pol:q=" + std::to_string(q_);
    case ScoreGenKind::Rtb:
      return "rtb:u0=" + format_number(u0_) + ",beta=" + format_number(beta_) +
             ",lambda=" + format_number(lambda_);
    case ScoreGenKind::LocalAucHard:
      return "localauc:u0=" + format_number(u0_);
    case ScoreGenKind::Dcg:
      return "dcg:n=" + std::to_string(discounts_.size()) + ",k=" + std::to_string(k_);
    case ScoreGenKind::Logistic:
      return "logistic";
    case ScoreGenKind::Logrank:
      return "logrank";
    case ScoreGenKind::Median:
      return "median";
    case ScoreGenKind::Vdw:
      return "vdw";
  }
  return "?";
}

std::string ScoreGen::label() const {
  switch (kind_) {
    case ScoreGenKind::Pol:
      return "pol" + std::to_string(q_);
    case ScoreGenKind::Rtb:
      return "rtb" + format_number(u0_);
    case ScoreGenKind::LocalAucHard:
      return "localauc" + format_number(u0_);
    case ScoreGenKind::Dcg:
      return "dcg" + std::to_string(k_);
    default:
      return to_string();
  }
}

ScoreGen ScoreGen::parse(std::string_view spec) {
  const std::string text = trim_lower(spec);
  if (text.empty()) throw InvalidInput("empty score-generating function spec");
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);

  std::map<std::string, std::string> params;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
        throw InvalidInput("score-generating function: malformed parameter '" + item +
                           "' in '" + std::string(spec) + "'");
      }
      params[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }

  auto take = [&](const char* key) -> std::optional<std::string> {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    std::string v = it->second;
    params.erase(it);
    return v;
  };
  auto finish = [&](ScoreGen g) {
    if (!params.empty()) {
      throw InvalidInput("score-generating function '" + kind +
                         "': unknown parameter '" + params.begin()->first + "'");
    }
    return g;
  };

  if (kind == "mww") return finish(mww());
  if (kind == "pol") {
    const auto q = take("q");
    return finish(pol(q ? parse_int("q", *q) : 3));
  }
  if (kind == "rtb") {
    const auto u0 = take("u0");
    const auto beta = take("beta");
    const auto lambda = take("lambda");
    return finish(rtb(u0 ? parse_number("u0", *u0) : 0.9,
                      beta ? parse_number("beta", *beta) : kDefaultRtbSlope,
                      lambda ? parse_number("lambda", *lambda) : kDefaultRtbSlope));
  }
  if (kind == "localauc") {
    const auto u0 = take("u0");
    return finish(local_auc_hard(u0 ? parse_number("u0", *u0) : 0.9));
  }
  if (kind == "dcg") {
    const auto n = take("n");
    const auto k = take("k");
    if (!n) throw InvalidInput("dcg: pool size 'n' is required");
    return finish(dcg_default(parse_int("n", *n), k ? parse_int("k", *k) : 1));
  }
  if (kind == "logistic") return finish(logistic());
  if (kind == "logrank") return finish(logrank());
  if (kind == "median") return finish(median());
  if (kind == "vdw") return finish(vdw());
  throw InvalidInput("unknown score-generating function '" + kind + "'");
}

}  // namespace wrank
