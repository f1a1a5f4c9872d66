#include "riskdual/gaussian_cvar.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "riskdual/format.hpp"

namespace riskdual {

void validate(const GaussianPortfolioParams& params) {
  if (!std::isfinite(params.xi0) || !std::isfinite(params.M) || !std::isfinite(params.Sigma) ||
      !std::isfinite(params.gamma)) {
    throw std::invalid_argument("portfolio parameters must be finite");
  }
  if (!(params.Sigma > 0.0)) throw std::invalid_argument("Sigma must be positive");
  if (!(params.p > 0.0 && params.p < 1.0)) throw std::invalid_argument("p must lie in (0, 1)");
  if (!(params.M > params.xi0)) {
    throw std::invalid_argument("the risky mean M must exceed the risk-free value xi0");
  }
}

double portfolio_mean(const GaussianPortfolioParams& params, double a) {
  return a * params.xi0 + (1.0 - a) * params.M;
}

double portfolio_std(const GaussianPortfolioParams& params, double a) {
  return (1.0 - a) * params.Sigma;
}

double portfolio_cvar(const GaussianPortfolioParams& params, double a) {
  return portfolio_std(params, a) * normal_cvar_coeff(params.p) - portfolio_mean(params, a);
}

const char* to_string(Boundary b) noexcept {
  switch (b) {
    case Boundary::Interior: return "interior";
    case Boundary::AtZero: return "at_zero";
    case Boundary::AtOne: return "at_one";
    case Boundary::Infeasible: return "infeasible";
  }
  return "unknown";
}

GaussianSolution solve_gaussian(const GaussianPortfolioParams& params) {
  validate(params);
  GaussianSolution sol;
  sol.c_p = normal_cvar_coeff(params.p);
  const double s = params.Sigma * sol.c_p - params.M;
  const double denom = s + params.xi0;  // Sigma c_p - (M - xi0)
  const double gamma = params.gamma;

  if (denom <= 0.0) {
    sol.lambda_sharp = 0.0;
    sol.a_sharp = 0.0;
    sol.boundary = s <= gamma ? Boundary::AtZero : Boundary::Infeasible;
  } else {
    sol.lambda_sharp = (params.M - params.xi0) / denom;
    if (gamma < -params.xi0) {
      sol.a_sharp = 1.0;
      sol.boundary = Boundary::Infeasible;
    } else if (s <= gamma) {
      sol.a_sharp = 0.0;
      sol.boundary = Boundary::AtZero;
    } else {
      sol.a_sharp = std::clamp((s - gamma) / denom, 0.0, 1.0);
      sol.boundary = sol.a_sharp == 1.0 ? Boundary::AtOne : Boundary::Interior;
    }
  }

  sol.theta = 1.0 + sol.lambda_sharp / (1.0 - params.p);
  sol.eta_sharp = portfolio_std(params, sol.a_sharp) * normal_quantile(params.p) -
                  portfolio_mean(params, sol.a_sharp);
  sol.value = sol.boundary == Boundary::Infeasible ? -std::numeric_limits<double>::infinity()
                                                   : portfolio_mean(params, sol.a_sharp);
  return sol;
}

double table3_theta_tolerance(double p) { return p > 0.97 ? 0.5 : 0.15; }

namespace {

struct PrintedCell {
  double p;
  double gamma;
  double a;
  double eta;
  double theta;
};

constexpr std::array<PrintedCell, 8> kPrinted{{
    {0.95, -630.0, 0.0, -735.0, 6.6},
    {0.95, -772.5, 0.36, -839.5, 6.6},
    {0.95, -978.5, 0.87, -991.9, 6.6},
    {0.95, -1030.0, 1.0, -1030.0, 6.6},
    {0.99, -496.0, 0.0, -565.1, 22.0},
    {0.99, -772.5, 0.47, -785.9, 22.0},
    {0.99, -978.5, 0.84, -955.6, 22.0},
    {0.99, -1030.0, 1.0, -1030.0, 22.0},
}};

}  // namespace

std::vector<Table3Row> reproduce_table3(double tolerance_scale) {
  if (!std::isfinite(tolerance_scale) || tolerance_scale < 0.0) {
    throw std::invalid_argument("tolerance scale must be finite and nonnegative");
  }
  std::vector<Table3Row> rows;
  rows.reserve(kPrinted.size());
  for (const PrintedCell& cell : kPrinted) {
    const GaussianSolution sol =
        solve_gaussian({kTable3Xi0, kTable3Mean, kTable3Sigma, cell.p, cell.gamma});
    Table3Row row;
    row.p = cell.p;
    row.gamma = cell.gamma;
    row.a_sharp_computed = sol.a_sharp;
    row.a_sharp_paper = cell.a;
    row.eta_computed = sol.eta_sharp;
    row.eta_paper = cell.eta;
    row.theta_computed = sol.theta;
    row.theta_paper = cell.theta;
    row.flag =
        std::abs(sol.a_sharp - cell.a) > kTable3ShareTolerance * tolerance_scale ||
        std::abs(sol.eta_sharp - cell.eta) > kTable3EtaTolerance * tolerance_scale ||
        std::abs(sol.theta - cell.theta) > table3_theta_tolerance(cell.p) * tolerance_scale;
    rows.push_back(row);
  }
  return rows;
}

void write_table3_csv(std::ostream& out, const std::vector<Table3Row>& rows) {
  out << kTable3CsvHeader << '\n';
  for (const Table3Row& r : rows) {
    out << format_double(r.p) << ',' << format_double(r.gamma) << ','
        << format_double(r.a_sharp_computed) << ',' << format_double(r.a_sharp_paper) << ','
        << format_double(r.eta_computed) << ',' << format_double(r.eta_paper) << ','
        << format_double(r.theta_computed) << ',' << format_double(r.theta_paper) << ','
        << (r.flag ? 1 : 0) << '\n';
  }
}

}  // namespace riskdual
