#include "wrank/normal.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>

#include "wrank/error.hpp"

namespace wrank::normal {

double pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal quantile requires p in (0,1)");
  }
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

}  // namespace wrank::normal
