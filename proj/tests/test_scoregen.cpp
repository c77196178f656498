#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wrank/error.hpp"
#include "wrank/normal.hpp"
#include "wrank/scoregen.hpp"

using namespace wrank;

namespace {

const char* const kAllSpecs[] = {"mww",      "pol:q=3",  "pol:q=1",     "rtb:u0=0.9",
                                 "rtb:u0=0.6", "localauc:u0=0.9", "dcg:n=50,k=10",
                                 "logistic", "logrank",  "median",      "vdw"};

}  // namespace

TEST_CASE("values at u = 0.5") {
  CHECK(ScoreGen::mww().value(0.5) == 0.5);
  CHECK(ScoreGen::logistic().value(0.5) == doctest::Approx(0.0));
  CHECK(ScoreGen::pol(3).value(0.5) == doctest::Approx(0.125));
  CHECK(ScoreGen::median().value(0.25) == -1.0);
  CHECK(ScoreGen::median().value(0.75) == 1.0);
  CHECK(ScoreGen::logrank().value(0.5) == doctest::Approx(std::log(2.0)));
  CHECK(ScoreGen::vdw().value(0.5) == doctest::Approx(0.0));
  CHECK(ScoreGen::local_auc_hard(0.9).value(0.5) == 0.0);
  CHECK(ScoreGen::local_auc_hard(0.9).value(0.95) == 0.95);
}

TEST_CASE("vdw inverts the normal CDF oracle") {
  for (double u : {0.01, 0.1, 0.3, 0.7, 0.99}) {
    CHECK(oracle::normal_cdf(ScoreGen::vdw().value(u)) == doctest::Approx(u).epsilon(1e-10));
  }
}

TEST_CASE("dcg with the default log2 discount") {
  const ScoreGen g = ScoreGen::dcg_default(9, 3);
  // (N+1) u = 5 -> c(5) = log2(6)
  CHECK(g.value(0.5) == doctest::Approx(std::log2(6.0)));
  // below the cutoff k/(N+1) = 0.3
  CHECK(g.value(0.2) == 0.0);
  CHECK(g.value(0.3) == doctest::Approx(std::log2(4.0)));
}

TEST_CASE("singular endpoints raise domain errors") {
  CHECK_THROWS_AS(ScoreGen::logrank().value(1.0), DomainError);
  CHECK_THROWS_AS(ScoreGen::vdw().value(0.0), DomainError);
  CHECK_THROWS_AS(ScoreGen::vdw().value(1.0), DomainError);
  CHECK_NOTHROW(ScoreGen::logrank().value(0.0));
  CHECK_THROWS_AS(ScoreGen::mww().value(1.5), DomainError);
}

TEST_CASE("derivatives") {
  CHECK(ScoreGen::mww().derivative(0.3) == 1.0);
  CHECK(ScoreGen::pol(3).derivative(0.5) == doctest::Approx(0.75));
  CHECK(ScoreGen::logistic().derivative(0.2) == doctest::Approx(2.0 * std::sqrt(3.0)));
  CHECK_THROWS_AS(ScoreGen::median().derivative(0.3), Unsupported);
  CHECK_THROWS_AS(ScoreGen::local_auc_hard(0.9).derivative(0.3), Unsupported);
  CHECK_THROWS_AS(ScoreGen::dcg_default(10, 2).derivative(0.3), Unsupported);
}

TEST_CASE("differentiable kinds") {
  for (const char* s : {"mww", "pol:q=3", "rtb:u0=0.9", "logistic", "logrank", "vdw"}) {
    CHECK_MESSAGE(ScoreGen::parse(s).differentiable(), s);
  }
  for (const char* s : {"localauc:u0=0.9", "median", "dcg:n=20,k=3"}) {
    CHECK_MESSAGE(!ScoreGen::parse(s).differentiable(), s);
  }
}

TEST_CASE("derivatives agree with finite differences of the value") {
  const double h = 1e-6;
  for (const char* s : {"mww", "pol:q=3", "rtb:u0=0.9", "rtb:u0=0.6", "logistic", "logrank", "vdw"}) {
    const ScoreGen g = ScoreGen::parse(s);
    for (int i = 1; i < 100; ++i) {
      const double u = i / 100.0;
      const double fd = (g.value(u + h) - g.value(u - h)) / (2 * h);
      CHECK_MESSAGE(std::abs(g.derivative(u) - fd) < 1e-6 * std::max(1.0, std::abs(fd)), s,
                    " u=", u);
      const double fd2 = (g.derivative(u + h) - g.derivative(u - h)) / (2 * h);
      CHECK_MESSAGE(std::abs(g.second_derivative(u) - fd2) < 1e-4 * std::max(1.0, std::abs(fd2)),
                    s, " u=", u);
    }
  }
}

TEST_CASE("every kind is nondecreasing on a 1001-point grid") {
  for (const char* s : kAllSpecs) {
    const ScoreGen g = ScoreGen::parse(s);
    const int lo = g.singular_at_endpoints() ? 1 : 0;
    const int hi = g.singular_at_endpoints() ? 999 : 1000;
    double prev = g.value(lo / 1000.0);
    for (int i = lo + 1; i <= hi; ++i) {
      const double v = g.value(i / 1000.0);
      CHECK_MESSAGE(v >= prev, s, " at ", i);
      prev = v;
    }
  }
}

TEST_CASE("rtb approaches the hard local AUC function for steep slopes") {
  const ScoreGen soft = ScoreGen::rtb(0.7, 200, 200);
  const ScoreGen hard = ScoreGen::local_auc_hard(0.7);
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double u = i / 1000.0;
    if (std::abs(u - 0.7) <= 0.05) continue;
    worst = std::max(worst, std::abs(soft.value(u) - hard.value(u)));
  }
  CHECK(worst < 0.01);
}

TEST_CASE("parse and canonical spec round-trip") {
  for (const char* s : kAllSpecs) {
    const ScoreGen g = ScoreGen::parse(s);
    const ScoreGen back = ScoreGen::parse(g.to_string());
    CHECK(back.to_string() == g.to_string());
    CHECK(back.kind() == g.kind());
    CHECK(back.value(0.42) == g.value(0.42));
  }
  CHECK(ScoreGen::parse("POL: q = 4").q() == 4);
  CHECK(ScoreGen::parse("pol").q() == 3);
  CHECK(ScoreGen::parse("rtb").u0() == doctest::Approx(0.9));
  CHECK(ScoreGen::parse("rtb:u0=0.8").beta() == 50.0);
  CHECK(ScoreGen::parse("pol:q=3").label() == "pol3");
  CHECK(ScoreGen::parse("rtb:u0=0.9").label() == "rtb0.9");
}

TEST_CASE("malformed specs are rejected") {
  CHECK_THROWS_AS(ScoreGen::parse(""), InvalidInput);
  CHECK_THROWS_AS(ScoreGen::parse("wilcoxon"), InvalidInput);
  CHECK_THROWS_AS(ScoreGen::parse("pol:q=0"), InvalidInput);
  CHECK_THROWS_AS(ScoreGen::parse("pol:q=abc"), InvalidInput);
  CHECK_THROWS_AS(ScoreGen::parse("pol:r=2"), InvalidInput);
  CHECK_THROWS_AS(ScoreGen::parse("rtb:u0=1.5"), InvalidInput);
  CHECK_THROWS_AS(ScoreGen::parse("dcg:k=3"), InvalidInput);
  CHECK_THROWS_AS(ScoreGen::parse("mww:q=2"), InvalidInput);
}

TEST_CASE("normal helpers") {
  for (double x : {-3.0, -1.0, 0.0, 0.5, 2.0}) {
    CHECK(normal::cdf(x) == doctest::Approx(oracle::normal_cdf(x)).epsilon(1e-12));
    CHECK(normal::quantile(normal::cdf(x)) == doctest::Approx(x).epsilon(1e-10));
  }
  CHECK_THROWS_AS(normal::quantile(0.0), DomainError);
}
