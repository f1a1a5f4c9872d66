#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riskdual/scenario.hpp"

namespace riskdual {

/**
 * Piecewise-linear concave utility u with u(0) = 0, used by the optimized
 * certainty equivalent.
 *
 * `slopes[j]` is the slope on the j-th segment, segments being split by the
 * strictly increasing `breakpoints` (so slopes.size() == breakpoints.size() + 1).
 * Accepted utilities satisfy:
 *   - slopes strictly decreasing (concavity), all >= 0 (nondecreasing u);
 *   - 1 is a supergradient at 0: left slope >= 1 >= right slope at 0;
 *   - rightmost slope < 1, so eta - E[u(eta - X)] grows without bound.
 */
class OceUtility {
 public:
  static OceUtility make(std::vector<double> breakpoints, std::vector<double> slopes);

  double operator()(double t) const;

  /// Slope of the segment containing t (right derivative at a breakpoint).
  double slope_at(double t) const;

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<double>& slopes() const noexcept { return slopes_; }

  friend bool operator==(const OceUtility&, const OceUtility&) = default;

 private:
  OceUtility() = default;
  std::size_t segment(double t) const;

  std::vector<double> breakpoints_;
  std::vector<double> slopes_;
  std::vector<double> value_at_break_;
};

enum class RiskKind { Variance, CVaR, WMd, OCE };

/// Which rho(x, eta) defines the risk measure, with its parameters.
class RiskSpec {
 public:
  static RiskSpec variance();
  /// Conditional value-at-risk at confidence level p in (0, 1).
  static RiskSpec cvar(double p);
  /// Weighted mean deviation from the p-quantile, p in (0, 1).
  static RiskSpec wmd(double p);
  static RiskSpec oce(OceUtility u);

  RiskKind kind() const noexcept { return kind_; }
  /// Confidence level; meaningful for CVaR and WMd only.
  double p() const noexcept { return p_; }
  /// Throws std::logic_error unless kind() == OCE.
  const OceUtility& utility() const;

  /// True for the kinds with a closed-form evaluation.
  bool has_closed_form() const noexcept { return kind_ != RiskKind::OCE; }

  /// Short label such as "cvar(p=0.95)".
  std::string label() const;

  friend bool operator==(const RiskSpec&, const RiskSpec&) = default;

 private:
  RiskSpec(RiskKind kind, double p) : kind_(kind), p_(p) {}

  RiskKind kind_;
  double p_ = 0.0;
  std::vector<OceUtility> utility_;  // one element when kind_ == OCE
};

std::string to_string(RiskKind kind);

/// rho(x, eta) for the given measure.
double rho(const RiskSpec& spec, double x, double eta);

/// One element of the subdifferential of rho at (x, eta).
struct RhoSubgradient {
  double dx = 0.0;
  double deta = 0.0;
};
RhoSubgradient rho_subgradient(const RiskSpec& spec, double x, double eta);

/// E[rho(X, eta)] summed over atoms in the given order.
double expected_rho(const RiskSpec& spec, const ScenarioSet& X, double eta);

struct RiskEvaluation {
  double value = 0.0;     ///< Risk_rho(X)
  double eta_star = 0.0;  ///< a minimizing eta
  std::pair<double, double> bracket{0.0, 0.0};
  std::size_t iterations = 0;
};

inline constexpr double kDefaultRiskTolerance = 1e-10;

/**
 * Risk_rho(X) = inf over eta of E[rho(X, eta)] by golden-section search.
 *
 * Initial bracket [min X - r, max X + r] with r = max X - min X + 1,
 * moved outward with doubling steps (at most 60) until it encloses a
 * minimizer; stops when the
 * bracket is at most tol * (1 + |min X| + |max X|) wide. eta_star is then
 * refined to the same width by bisection on the sign of the expected
 * eta-subgradient. Atoms are put in a canonical order first, so the result
 * does not depend on their order.
 *
 * Throws std::invalid_argument if tol <= 0 and BracketError if no
 * minimizer is enclosed.
 */
RiskEvaluation evaluate_risk(const RiskSpec& spec, const ScenarioSet& X,
                             double tol = kDefaultRiskTolerance);

/**
 * Exact evaluation for Variance, CVaR and WMd.
 *
 * Variance: eta* = E[X], value = E[(X - E[X])^2].
 * CVaR: eta* = left p-quantile, value = eta* + E[(X - eta*)_+] / (1 - p).
 * WMd: eta* = left p-quantile, value = p E[X] - integral_0^p of the quantile.
 *
 * Throws std::invalid_argument for OCE.
 */
RiskEvaluation closed_form_risk(const RiskSpec& spec, const ScenarioSet& X);

/// closed_form_risk when available, evaluate_risk otherwise.
RiskEvaluation risk_of(const RiskSpec& spec, const ScenarioSet& X,
                       double tol = kDefaultRiskTolerance);

/// S_rho(X) = -Risk_rho(-X).
double safety_measure(const RiskSpec& spec, const ScenarioSet& X,
                      double tol = kDefaultRiskTolerance);

/// Smallest atom value v with P(X <= v) >= p, accumulating probabilities
/// over atoms sorted ascending.
double left_quantile(const ScenarioSet& X, double p);

}  // namespace riskdual
