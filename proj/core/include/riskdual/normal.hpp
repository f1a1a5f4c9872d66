#pragma once

// Standard Normal distribution utilities used by the Gaussian portfolio
// closed form and by the Normal scenario sampler.

namespace riskdual {

double normal_pdf(double x) noexcept;

/// Phi(x), computed through erfc so both tails keep relative accuracy.
double normal_cdf(double x) noexcept;

/// 1 - Phi(x) without cancellation.
double normal_sf(double x) noexcept;

/**
 * Standard Normal quantile Phi^{-1}(q) for q in (0, 1).
 *
 * Starts from Acklam's piecewise rational approximation (relative error
 * below 1.2e-9 over the whole range) and applies one Newton step on the
 * CDF residual. The residual is formed on the tail closest to q, so the
 * result is accurate to a few ulps in both tails.
 *
 * Throws std::invalid_argument when q is not strictly inside (0, 1).
 */
double normal_quantile(double q);

/**
 * CVaR_p(-N) for N ~ N(0, 1), i.e. phi(Phi^{-1}(p)) / (1 - p).
 * Throws std::invalid_argument when p is not strictly inside (0, 1).
 */
double normal_cvar_coeff(double p);

}  // namespace riskdual
