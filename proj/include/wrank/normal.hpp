#pragma once

// Standard normal helpers shared across modules.

namespace wrank::normal {

double pdf(double x);
double cdf(double x);
/// Inverse of cdf on (0,1); throws DomainError outside the open interval.
double quantile(double p);

}  // namespace wrank::normal
