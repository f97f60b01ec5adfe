#pragma once

namespace journeynet::dist {

double normal_cdf(double x) noexcept;
/// Upper tail 1 - Phi(x), accurate far into the tail.
double normal_sf(double x) noexcept;
/// Inverse of normal_cdf for p in (0, 1).
double normal_quantile(double p);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// P(X > x) for X ~ chi-squared with `df` degrees of freedom.
double chi2_sf(double x, double df);

/// P(Q <= q) for the studentized range of `k` means with `df` error degrees
/// of freedom (Copenhaver & Holland quadrature).
double studentized_range_cdf(double q, double k, double df);

}  // namespace journeynet::dist
