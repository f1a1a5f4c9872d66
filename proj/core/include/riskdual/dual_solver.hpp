#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "riskdual/decision_set.hpp"
#include "riskdual/risk_measures.hpp"
#include "riskdual/scenario.hpp"
#include "riskdual/utility_family.hpp"

namespace riskdual {

/**
 * sup over a in A of E[J(a)] subject to Risk_rho(-J(a)) <= gamma, with
 * linear payoff J(a, xi_i) = sum_j a_j * returns(i, j) on m scenarios.
 */
class LinearPayoffProblem {
 public:
  /// Validates shapes, probabilities (as ScenarioSet does) and finiteness.
  static LinearPayoffProblem make(Eigen::MatrixXd returns, std::vector<double> probs,
                                  DecisionSet decision_set, RiskSpec risk, double gamma);

  const Eigen::MatrixXd& returns() const noexcept { return returns_; }
  const Eigen::VectorXd& probs() const noexcept { return probs_; }
  const DecisionSet& decision_set() const noexcept { return decision_set_; }
  const RiskSpec& risk() const noexcept { return risk_; }
  double gamma() const noexcept { return gamma_; }
  std::size_t scenarios() const noexcept { return static_cast<std::size_t>(returns_.rows()); }
  std::size_t assets() const noexcept { return static_cast<std::size_t>(returns_.cols()); }

  UtilityFamilySpec family() const { return {risk_, gamma_}; }

  /// Same data with another risk bound.
  LinearPayoffProblem with_gamma(double gamma) const;

 private:
  LinearPayoffProblem(Eigen::MatrixXd returns, Eigen::VectorXd probs, DecisionSet set,
                      RiskSpec risk, double gamma)
      : returns_(std::move(returns)), probs_(std::move(probs)), decision_set_(std::move(set)),
        risk_(std::move(risk)), gamma_(gamma) {}

  Eigen::MatrixXd returns_;
  Eigen::VectorXd probs_;
  DecisionSet decision_set_;
  RiskSpec risk_;
  double gamma_;
};

/// The payoff distribution J(a, .) as a scenario set.
ScenarioSet payoff(const LinearPayoffProblem& problem, const Eigen::VectorXd& a);

/// Risk_rho(-J(a)) (closed form when available).
RiskEvaluation risk_at(const LinearPayoffProblem& problem, const Eigen::VectorXd& a);

/**
 * Psi_a(lambda, eta) = E[J(a) - lambda * rho(-J(a), eta)] + lambda * gamma.
 * Throws std::invalid_argument if lambda < 0 or a lies outside the
 * decision set by more than 1e-9.
 */
double psi(const LinearPayoffProblem& problem, const Eigen::VectorXd& a, double lambda,
           double eta);

struct InnerMaxResult {
  Eigen::VectorXd a;
  double eta = 0.0;
  double value = 0.0;  ///< Psi at (a, eta), approximately sup over (a, eta)
  std::size_t iterations = 0;
  bool budget_exhausted = false;
};

inline constexpr std::size_t kDefaultInnerBudget = 20000;

/**
 * sup over (a, eta) of Psi_a(lambda, eta), i.e. the dual function d(lambda).
 *
 * Psi is jointly concave in (a, eta) for jointly convex rho (all four
 * measures here), so a deep-cut ellipsoid search over the decision set's
 * chart times an eta interval finds the global value. eta is then
 * re-optimized exactly for the returned a.
 */
InnerMaxResult inner_max(const LinearPayoffProblem& problem, double lambda,
                         std::size_t budget = kDefaultInnerBudget);

struct SolveOptions {
  std::size_t inner_budget = kDefaultInnerBudget;
  double inner_tolerance = 1e-11;
  /// Final lambda bracket width, relative to (1 + lambda_max).
  double lambda_tolerance = 1e-9;
  std::size_t max_doublings = 40;
  std::size_t max_dual_iterations = 200;
  /// Constraint slack allowed, relative to (1 + |gamma|).
  double feasibility_tolerance = 1e-6;
};

enum class SolveStatus { Optimal, Infeasible, IterLimit };

const char* to_string(SolveStatus status) noexcept;

/// One evaluation of the dual function.
struct DualProbe {
  double lambda = 0.0;
  double dual_value = 0.0;       ///< d(lambda)
  double expected_payoff = 0.0;  ///< E[J] at the inner maximizer
  double risk = 0.0;             ///< Risk_rho(-J) at the inner maximizer
  bool feasible = false;         ///< risk <= gamma + feasibility tolerance
};

struct SolveResult {
  Eigen::VectorXd a_star;
  double lambda_star = 0.0;
  double eta_star = 0.0;
  double value = -std::numeric_limits<double>::infinity();  ///< E[J(a_star)]
  double risk_at_opt = 0.0;
  SolveStatus status = SolveStatus::IterLimit;
  bool constraint_active = false;

  double dual_value = 0.0;         ///< d(lambda_star)
  double lambda_max = 0.0;         ///< final dual search interval is [0, lambda_max]
  bool lambda_nonunique = false;   ///< the dual is flat next to lambda_star
  double min_risk_probed = std::numeric_limits<double>::infinity();
  std::vector<DualProbe> trace;
};

/**
 * Solves the risk-constrained problem through its Lagrangian dual.
 *
 * d(lambda) = sup_(a, eta) Psi_a(lambda, eta) is convex. lambda_max starts
 * at 1 and doubles (at most max_doublings times) while the subgradient
 * gamma - Risk(-J(a(lambda_max))) is still negative; if it never turns
 * nonnegative, no a meets the bound and the status is Infeasible. Otherwise
 * d is minimized by golden section on [0, lambda_max]. The primal point is
 * recovered as the maximizer of the exact penalty
 * E[J] - mu * (E[rho(-J, eta)] - gamma)_+ with mu = 2 lambda_star + 1 > lambda_star.
 */
SolveResult solve(const LinearPayoffProblem& problem, const SolveOptions& options = {});

struct MaxminResult {
  ExtendedValue value;
  Eigen::VectorXd a;
  double eta = 0.0;
  bool converged = false;
};

/**
 * sup over (a, eta) of inf over lambda >= 0 of E[U^(lambda)(J(a), eta)].
 *
 * The inner infimum is inner_inf_over_lambda (E[J] where
 * E[rho(-J, eta)] <= gamma, minus infinity elsewhere); the outer supremum
 * runs the same ellipsoid search with that set as a constraint. Returns
 * MinusInfinity when min over (a, eta) of E[rho(-J, eta)] exceeds gamma
 * beyond the feasibility tolerance.
 */
MaxminResult maxmin_solve(const LinearPayoffProblem& problem, const SolveOptions& options = {});
ExtendedValue maxmin_value(const LinearPayoffProblem& problem, const SolveOptions& options = {});

/// Min over a of Risk_rho(-J(a)), with its minimizer.
struct MinRiskResult {
  Eigen::VectorXd a;
  double risk = 0.0;
};
MinRiskResult minimize_risk(const LinearPayoffProblem& problem, const SolveOptions& options = {});

struct SaddleGrid {
  std::size_t lambda_points = 101;
  std::size_t eta_points = 101;
  /// lambda grid is [0, lambda_max]; NaN means 2 * lambda_star + 1.
  double lambda_max = std::numeric_limits<double>::quiet_NaN();
  /// eta grid is eta_star +- eta_half_width; NaN means (range of -J) + 1.
  double eta_half_width = std::numeric_limits<double>::quiet_NaN();
};

struct SaddleReport {
  double center_value = 0.0;            ///< Psi(lambda*, eta*)
  double worst_eta_violation = 0.0;     ///< max_eta Psi(lambda*, eta) - Psi(lambda*, eta*)
  double worst_lambda_violation = 0.0;  ///< max_lambda Psi(lambda*, eta*) - Psi(lambda, eta*)
  std::size_t lambda_points = 0;
  std::size_t eta_points = 0;

  /// Largest violation divided by (1 + |center_value|), floored at zero.
  double relative_violation() const noexcept;
  bool holds(double rel_tol) const noexcept { return relative_violation() <= rel_tol; }
};

/**
 * Checks Psi(lambda*, eta) <= Psi(lambda*, eta*) <= Psi(lambda, eta*) at
 * a = a_star over a grid of eta and lambda >= 0 values.
 * Throws std::invalid_argument unless result.status == Optimal.
 */
SaddleReport verify_saddle(const LinearPayoffProblem& problem, const SolveResult& result,
                           const SaddleGrid& grid = {});

}  // namespace riskdual
