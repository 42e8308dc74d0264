#pragma once

namespace wrc {

/// Standard normal CDF.
double std_normal_cdf(double x);

/// Standard normal quantile (Wichura's AS 241, double precision).
/// p must lie in (0,1).
double std_normal_quantile(double p);

/// Bivariate standard normal CDF P(X <= x, Y <= y) with correlation rho,
/// |rho| < 1.  Genz's hybrid quadrature; absolute error well below 1e-10.
double bvn_cdf(double x, double y, double rho);

}  // namespace wrc
