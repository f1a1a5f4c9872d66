#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "riskdual/risk_measures.hpp"
#include "riskdual/scenario.hpp"

namespace riskdual {

/// The family U^(lambda)(x, eta) = x + lambda * (gamma - rho(-x, eta)), lambda >= 0.
struct UtilityFamilySpec {
  RiskSpec risk;
  double gamma = 0.0;  ///< risk bound
};

/// Marker for an infimum that is unbounded below.
struct MinusInfinity {
  friend bool operator==(MinusInfinity, MinusInfinity) = default;
};

/// Either a finite value or minus infinity; never a floating sentinel.
using ExtendedValue = std::variant<double, MinusInfinity>;

inline bool is_minus_infinity(const ExtendedValue& v) {
  return std::holds_alternative<MinusInfinity>(v);
}

/// Throws std::invalid_argument when lambda < 0.
double utility_value(const UtilityFamilySpec& fam, double lambda, double x, double eta);

/// E[U^(lambda)(J, eta)] over the payoff atoms.
double expected_utility(const UtilityFamilySpec& fam, double lambda, const ScenarioSet& payoff,
                        double eta);

/**
 * inf over lambda >= 0 of E[U^(lambda)(J, eta)].
 *
 * The expectation is E[J] + lambda * (gamma - E[rho(-J, eta)]), affine in
 * lambda, so the infimum is E[J] when E[rho(-J, eta)] <= gamma and minus
 * infinity otherwise.
 */
ExtendedValue inner_inf_over_lambda(const UtilityFamilySpec& fam, const ScenarioSet& payoff,
                                    double eta);

/// 1 + lambda / (1 - p): slope of the CVaR utility below the anchor -eta.
double loss_aversion_theta(double lambda, double p);

struct UtilityPoint {
  double x = 0.0;
  double utility = 0.0;
};

/**
 * n equally spaced samples of x -> U^(lambda)(x, eta) on [x_min, x_max].
 *
 * Kinks of the curve that fall strictly inside the range are added as
 * extra samples (x = -eta for CVaR and WMd, x = b - eta for each OCE
 * breakpoint b), so a piecewise-linear plot is exact.
 */
std::vector<UtilityPoint> utility_curve(const UtilityFamilySpec& fam, double lambda, double eta,
                                        double x_min, double x_max, std::size_t n);

}  // namespace riskdual
