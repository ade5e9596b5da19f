#pragma once

namespace plspower {

// Standard normal CDF, Phi(x).
double normal_cdf(double x);

// Standard normal quantile, Phi^-1(p), for p in (0, 1).
//
// Acklam's rational approximation (relative error ~1.15e-9) followed by one
// Halley step against normal_cdf, which brings the absolute error well below
// 1e-9 over the whole double range. Exactly antisymmetric:
// normal_quantile(p) == -normal_quantile(1 - p).
//
// Throws DomainError when p is not strictly inside (0, 1) or is NaN.
double normal_quantile(double p);

}  // namespace plspower
