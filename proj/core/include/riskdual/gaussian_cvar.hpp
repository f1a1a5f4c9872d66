#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "riskdual/normal.hpp"

namespace riskdual {

/**
 * Two-asset portfolio: a share a in [0, 1] goes to a risk-free asset worth
 * xi0, the rest to a risky asset worth M + Sigma * N with N standard Normal.
 * Constraint: CVaR_p of the loss, sigma(a) * c_p - mu(a), is at most gamma.
 */
struct GaussianPortfolioParams {
  double xi0 = 0.0;
  double M = 0.0;
  double Sigma = 1.0;
  double p = 0.95;
  double gamma = 0.0;
};

/// Throws std::invalid_argument unless all fields are finite, Sigma > 0,
/// p is in (0, 1) and M > xi0.
void validate(const GaussianPortfolioParams& params);

/// mu(a) = a xi0 + (1 - a) M
double portfolio_mean(const GaussianPortfolioParams& params, double a);
/// sigma(a) = (1 - a) Sigma
double portfolio_std(const GaussianPortfolioParams& params, double a);
/// sigma(a) c_p - mu(a)
double portfolio_cvar(const GaussianPortfolioParams& params, double a);

enum class Boundary { Interior, AtZero, AtOne, Infeasible };

const char* to_string(Boundary b) noexcept;

struct GaussianSolution {
  double a_sharp = 0.0;
  double lambda_sharp = 0.0;
  double eta_sharp = 0.0;
  double theta = 1.0;
  double c_p = 0.0;
  double value = 0.0;  ///< mu(a_sharp); minus infinity when infeasible
  Boundary boundary = Boundary::Infeasible;
};

/**
 * Closed-form optimum. With s = Sigma c_p - M (the risk at a = 0):
 *   a = 0 when s <= gamma, otherwise a = (s - gamma) / (s + xi0) clamped
 *   to [0, 1]; infeasible when gamma < -xi0.
 *   lambda = (M - xi0) / (Sigma c_p - M + xi0), from the stationarity
 *   condition (1 + lambda)(xi0 - M) + lambda c_p Sigma = 0.
 *   eta = sigma(a) Phi^{-1}(p) - mu(a), theta = 1 + lambda / (1 - p).
 * lambda does not depend on gamma. If Sigma c_p - M + xi0 <= 0 the risky
 * asset is never riskier than the risk-free one; then a = 0 whenever
 * s <= gamma (else infeasible) and lambda = 0.
 * For an infeasible problem a_sharp is the least risky share.
 */
GaussianSolution solve_gaussian(const GaussianPortfolioParams& params);

struct Table3Row {
  double p = 0.0;
  double gamma = 0.0;
  double a_sharp_computed = 0.0;
  double a_sharp_paper = 0.0;
  double eta_computed = 0.0;
  double eta_paper = 0.0;
  double theta_computed = 0.0;
  double theta_paper = 0.0;
  bool flag = false;  ///< some computed value is outside tolerance of the reference one
};

/// Per-cell tolerances before scaling.
inline constexpr double kTable3ShareTolerance = 0.01;
inline constexpr double kTable3EtaTolerance = 1.5;
double table3_theta_tolerance(double p);

/// Reference loss-aversion table for xi0 = 1030, M = 1144, Sigma = 249.
inline constexpr double kTable3Xi0 = 1030.0;
inline constexpr double kTable3Mean = 1144.0;
inline constexpr double kTable3Sigma = 249.0;

/**
 * Recomputes the eight reference (p, gamma) cells. A row is flagged when
 * |a| differs by more than 0.01 * scale, |eta| by more than 1.5 * scale,
 * or theta by more than 0.15 * scale (p = 0.95) / 0.5 * scale (p = 0.99).
 * scale = 0 flags every row that is not reproduced exactly.
 * Throws std::invalid_argument for a negative or non-finite scale.
 */
std::vector<Table3Row> reproduce_table3(double tolerance_scale = 1.0);

inline constexpr const char* kTable3CsvHeader =
    "p,gamma,a_sharp_computed,a_sharp_paper,eta_computed,eta_paper,theta_computed,theta_paper,flag";

/// CSV with kTable3CsvHeader, shortest round-trip numbers, flag written as 0 or 1.
void write_table3_csv(std::ostream& out, const std::vector<Table3Row>& rows);

}  // namespace riskdual
