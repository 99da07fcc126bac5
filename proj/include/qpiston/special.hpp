#pragma once

namespace qpiston::special {

/// ln Gamma(x), x > 0.
double log_gamma(double x);

double erf(double x);

/// 1 - erf(x) without cancellation for large x.
double erfc(double x);

/// psi(x) = d/dx ln Gamma(x), x > 0.
double digamma(double x);

/// P(s, x) = gamma(s, x) / Gamma(s), s > 0, x >= 0. Gamma CDF with unit rate.
double regularized_lower_incomplete_gamma(double s, double x);

/// Standard normal density and lower-tail CDF.
double normal_pdf(double z);
double normal_cdf(double z);

}  // namespace qpiston::special
