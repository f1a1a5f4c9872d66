#include "riskdual/dual_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "riskdual/cutting_plane.hpp"
#include "riskdual/golden_section.hpp"

namespace riskdual {

// --- problem ----------------------------------------------------------------

LinearPayoffProblem LinearPayoffProblem::make(Eigen::MatrixXd returns, std::vector<double> probs,
                                              DecisionSet decision_set, RiskSpec risk,
                                              double gamma) {
  if (returns.rows() == 0 || returns.cols() == 0) {
    throw std::invalid_argument("returns matrix must have at least one scenario and one asset");
  }
  if (static_cast<std::size_t>(returns.rows()) != probs.size()) {
    throw std::invalid_argument("returns has " + std::to_string(returns.rows()) +
                                " scenarios but " + std::to_string(probs.size()) +
                                " probabilities were given");
  }
  if (static_cast<std::size_t>(returns.cols()) != decision_set.dimension()) {
    throw std::invalid_argument("returns has " + std::to_string(returns.cols()) +
                                " assets but the decision set has dimension " +
                                std::to_string(decision_set.dimension()));
  }
  if (!returns.allFinite()) throw std::invalid_argument("returns must be finite");
  if (!std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite");

  // Reuse the scenario checks (nonnegative, sums to one, renormalized).
  const std::size_t m = probs.size();
  const ScenarioSet checked = ScenarioSet::make(std::vector<double>(m, 0.0), std::move(probs));
  Eigen::VectorXd p(static_cast<Eigen::Index>(checked.size()));
  for (std::size_t i = 0; i < checked.size(); ++i) p[static_cast<Eigen::Index>(i)] = checked.prob(i);

  return LinearPayoffProblem(std::move(returns), std::move(p), std::move(decision_set),
                             std::move(risk), gamma);
}

LinearPayoffProblem LinearPayoffProblem::with_gamma(double gamma) const {
  if (!std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite");
  LinearPayoffProblem copy = *this;
  copy.gamma_ = gamma;
  return copy;
}

ScenarioSet payoff(const LinearPayoffProblem& problem, const Eigen::VectorXd& a) {
  const Eigen::VectorXd J = problem.returns() * a;
  const auto& p = problem.probs();
  return ScenarioSet::make(std::vector<double>(J.data(), J.data() + J.size()),
                           std::vector<double>(p.data(), p.data() + p.size()));
}

RiskEvaluation risk_at(const LinearPayoffProblem& problem, const Eigen::VectorXd& a) {
  return risk_of(problem.risk(), affine(payoff(problem, a), -1.0, 0.0), 1e-12);
}

double psi(const LinearPayoffProblem& problem, const Eigen::VectorXd& a, double lambda,
           double eta) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
  if (!problem.decision_set().contains(a, 1e-9)) {
    throw std::invalid_argument("allocation lies outside the decision set");
  }
  const Eigen::VectorXd J = problem.returns() * a;
  const auto& p = problem.probs();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < J.size(); ++i) {
    sum += p[i] * (J[i] - lambda * rho(problem.risk(), -J[i], eta));
  }
  return sum + lambda * problem.gamma();
}

const char* to_string(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::IterLimit: return "iter_limit";
  }
  return "unknown";
}

// --- search space -----------------------------------------------------------

namespace {

/// The joint (y, eta) search space: y charts the decision set, eta is
/// boxed around every loss value reachable from it.
class JointSpace {
 public:
  explicit JointSpace(const LinearPayoffProblem& problem)
      : problem_(problem), chart_(problem.decision_set().chart()) {
    k_ = chart_.basis.cols();
    mean_returns_ = problem.returns().transpose() * problem.probs();
    grad_expected_ = Eigen::VectorXd::Zero(k_ + 1);
    grad_expected_.head(k_) = chart_.basis.transpose() * mean_returns_;

    const auto& R = problem.returns();
    const auto& set = problem.decision_set();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < R.rows(); ++i) {
      double xlo = 0.0;
      double xhi = 0.0;
      if (set.type() == DecisionSet::Type::Simplex) {
        xlo = (-R.row(i)).minCoeff();
        xhi = (-R.row(i)).maxCoeff();
      } else {
        for (Eigen::Index j = 0; j < R.cols(); ++j) {
          const double u = -R(i, j) * set.lower()[static_cast<std::size_t>(j)];
          const double v = -R(i, j) * set.upper()[static_cast<std::size_t>(j)];
          xlo += std::min(u, v);
          xhi += std::max(u, v);
        }
      }
      lo = std::min(lo, xlo);
      hi = std::max(hi, xhi);
    }
    const double pad = 0.01 * (hi - lo) + 1e-6 * (1.0 + std::abs(lo) + std::abs(hi));
    eta_lo_ = lo - pad;
    eta_hi_ = hi + pad;

    const Eigen::Index rows = chart_.G.rows();
    G_ = Eigen::MatrixXd::Zero(rows + 2, k_ + 1);
    h_ = Eigen::VectorXd::Zero(rows + 2);
    G_.topLeftCorner(rows, k_) = chart_.G;
    h_.head(rows) = chart_.h;
    G_(rows, k_) = -1.0;
    h_[rows] = -eta_lo_;
    G_(rows + 1, k_) = 1.0;
    h_[rows + 1] = eta_hi_;

    center_ = Eigen::VectorXd::Zero(k_ + 1);
    half_ = Eigen::VectorXd::Zero(k_ + 1);
    center_.head(k_) = 0.5 * (chart_.y_lo + chart_.y_hi);
    half_.head(k_) = 0.5 * (chart_.y_hi - chart_.y_lo);
    center_[k_] = 0.5 * (eta_lo_ + eta_hi_);
    half_[k_] = 0.5 * (eta_hi_ - eta_lo_);
  }

  struct Point {
    double expected = 0.0;  ///< E[J(a)]
    double risk_obj = 0.0;  ///< E[rho(-J(a), eta)]
    Eigen::VectorXd risk_grad;  ///< subgradient of risk_obj in (y, eta)
  };

  Eigen::VectorXd allocation(const Eigen::VectorXd& z) const {
    return chart_.offset + chart_.basis * z.head(k_);
  }

  Point evaluate(const Eigen::VectorXd& z) const {
    const Eigen::VectorXd a = allocation(z);
    const double eta = z[k_];
    const Eigen::VectorXd J = problem_.returns() * a;
    const auto& p = problem_.probs();
    const RiskSpec& spec = problem_.risk();

    Point out;
    out.expected = mean_returns_.dot(a);
    Eigen::VectorXd weights(J.size());
    double d_eta = 0.0;
    for (Eigen::Index i = 0; i < J.size(); ++i) {
      const double x = -J[i];
      out.risk_obj += p[i] * rho(spec, x, eta);
      const RhoSubgradient g = rho_subgradient(spec, x, eta);
      weights[i] = p[i] * g.dx;
      d_eta += p[i] * g.deta;
    }
    // d/da of sum p_i rho(-R_i a, eta) = -R^T (p .* dx)
    out.risk_grad = Eigen::VectorXd::Zero(k_ + 1);
    out.risk_grad.head(k_) = -(chart_.basis.transpose() * (problem_.returns().transpose() * weights));
    out.risk_grad[k_] = d_eta;
    return out;
  }

  CuttingPlaneResult maximize(const CuttingPlaneOracle& oracle, std::size_t budget,
                              double rel_tol) const {
    CuttingPlaneOptions opts;
    opts.max_iterations = budget;
    opts.rel_tol = rel_tol;
    return maximize_concave(oracle, G_, h_, center_, half_, opts);
  }

  /// Allocation of z pulled exactly onto the decision set.
  Eigen::VectorXd clean_allocation(const Eigen::VectorXd& z) const {
    return problem_.decision_set().project(allocation(z));
  }

  const Eigen::VectorXd& grad_expected() const noexcept { return grad_expected_; }
  const Eigen::VectorXd& mean_returns() const noexcept { return mean_returns_; }
  Eigen::Index chart_dim() const noexcept { return k_; }

 private:
  const LinearPayoffProblem& problem_;
  DecisionSet::Chart chart_;
  Eigen::Index k_ = 0;
  Eigen::VectorXd mean_returns_;
  Eigen::VectorXd grad_expected_;
  double eta_lo_ = 0.0;
  double eta_hi_ = 0.0;
  Eigen::MatrixXd G_;
  Eigen::VectorXd h_;
  Eigen::VectorXd center_;
  Eigen::VectorXd half_;
};

InnerMaxResult inner_max_in(const JointSpace& space, const LinearPayoffProblem& problem,
                            double lambda, std::size_t budget, double rel_tol) {
  const double gamma = problem.gamma();
  const CuttingPlaneOracle oracle = [&](const Eigen::VectorXd& z) {
    const JointSpace::Point pt = space.evaluate(z);
    OracleAnswer ans;
    ans.value = pt.expected - lambda * (pt.risk_obj - gamma);
    ans.direction = space.grad_expected() - lambda * pt.risk_grad;
    return ans;
  };
  const CuttingPlaneResult cp = space.maximize(oracle, budget, rel_tol);

  InnerMaxResult out;
  out.a = space.clean_allocation(cp.point);
  out.iterations = cp.iterations;
  out.budget_exhausted = !cp.converged;
  out.eta = cp.point[space.chart_dim()];
  out.value = psi(problem, out.a, lambda, out.eta);
  // Exact eta-step for the final allocation.
  const double eta_exact = risk_at(problem, out.a).eta_star;
  const double at_exact = psi(problem, out.a, lambda, eta_exact);
  if (at_exact >= out.value) {
    out.eta = eta_exact;
    out.value = at_exact;
  }
  return out;
}

}  // namespace

InnerMaxResult inner_max(const LinearPayoffProblem& problem, double lambda, std::size_t budget) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
  const JointSpace space(problem);
  return inner_max_in(space, problem, lambda, budget, SolveOptions{}.inner_tolerance);
}

MinRiskResult minimize_risk(const LinearPayoffProblem& problem, const SolveOptions& options) {
  const JointSpace space(problem);
  const CuttingPlaneOracle oracle = [&](const Eigen::VectorXd& z) {
    const JointSpace::Point pt = space.evaluate(z);
    OracleAnswer ans;
    ans.value = -pt.risk_obj;
    ans.direction = -pt.risk_grad;
    return ans;
  };
  const CuttingPlaneResult cp = space.maximize(oracle, options.inner_budget, options.inner_tolerance);
  MinRiskResult out;
  out.a = space.clean_allocation(cp.point);
  out.risk = risk_at(problem, out.a).value;
  return out;
}

// --- dual solve -------------------------------------------------------------

SolveResult solve(const LinearPayoffProblem& problem, const SolveOptions& options) {
  const JointSpace space(problem);
  const double gamma = problem.gamma();
  const double feas_tol = options.feasibility_tolerance * (1.0 + std::abs(gamma));

  SolveResult res;
  bool inner_exhausted = false;
  Eigen::VectorXd least_risky;

  auto probe = [&](double lambda) -> DualProbe {
    const InnerMaxResult inner =
        inner_max_in(space, problem, lambda, options.inner_budget, options.inner_tolerance);
    inner_exhausted = inner_exhausted || inner.budget_exhausted;
    DualProbe pr;
    pr.lambda = lambda;
    pr.dual_value = inner.value;
    pr.expected_payoff = space.mean_returns().dot(inner.a);
    pr.risk = risk_at(problem, inner.a).value;
    pr.feasible = pr.risk <= gamma + feas_tol;
    if (pr.risk < res.min_risk_probed) {
      res.min_risk_probed = pr.risk;
      least_risky = inner.a;
    }
    res.trace.push_back(pr);
    return pr;
  };

  // Grow [0, lambda_max] until d has a nonnegative subgradient at its end.
  double lambda_max = 1.0;
  DualProbe at_max = probe(lambda_max);
  std::size_t doublings = 0;
  while (gamma - at_max.risk < -feas_tol) {
    if (doublings == options.max_doublings) {
      res.status = SolveStatus::Infeasible;
      res.lambda_max = lambda_max;
      res.lambda_star = lambda_max;
      res.a_star = least_risky;
      res.dual_value = at_max.dual_value;
      const RiskEvaluation r = risk_at(problem, least_risky);
      res.risk_at_opt = r.value;
      res.eta_star = r.eta_star;
      return res;
    }
    lambda_max *= 2.0;
    ++doublings;
    at_max = probe(lambda_max);
  }
  res.lambda_max = lambda_max;

  const Minimum1D dual_min = golden_section_minimize(
      [&](double lambda) { return probe(lambda).dual_value; }, 0.0, lambda_max,
      options.lambda_tolerance * (1.0 + lambda_max), options.max_dual_iterations);
  double lambda_star = dual_min.argmin;

  double d_zero = 0.0;
  double d_max = 0.0;
  for (const DualProbe& pr : res.trace) {
    if (pr.lambda == 0.0) d_zero = pr.dual_value;
    if (pr.lambda == lambda_max) d_max = pr.dual_value;
  }

  // Primal recovery by exact penalty: any weight above the multiplier works.
  const double mu = 2.0 * lambda_star + 1.0;
  const CuttingPlaneOracle penalty = [&](const Eigen::VectorXd& z) {
    const JointSpace::Point pt = space.evaluate(z);
    const double excess = pt.risk_obj - gamma;
    OracleAnswer ans;
    ans.value = pt.expected - mu * std::max(0.0, excess);
    ans.direction = space.grad_expected();
    if (excess > 0.0) ans.direction -= mu * pt.risk_grad;
    return ans;
  };
  const CuttingPlaneResult rec =
      space.maximize(penalty, options.inner_budget, options.inner_tolerance);

  res.a_star = space.clean_allocation(rec.point);
  const RiskEvaluation at_opt = risk_at(problem, res.a_star);
  res.risk_at_opt = at_opt.value;
  res.eta_star = at_opt.eta_star;
  res.value = space.mean_returns().dot(res.a_star);
  res.constraint_active = res.risk_at_opt >= gamma - feas_tol;

  const double flat_tol = 1e-9 * (1.0 + std::abs(dual_min.value));
  if (res.constraint_active) {
    res.dual_value = dual_min.value;
    res.lambda_nonunique = (lambda_star > 0.0 && d_zero <= dual_min.value + flat_tol) ||
                           (lambda_star < lambda_max && d_max <= dual_min.value + flat_tol);
  } else {
    lambda_star = 0.0;
    res.dual_value = d_zero;
    res.lambda_nonunique = d_max <= d_zero + flat_tol;
  }
  res.lambda_star = lambda_star;

  const bool recovered = rec.converged && res.risk_at_opt <= gamma + feas_tol;
  res.status = recovered && dual_min.converged ? SolveStatus::Optimal : SolveStatus::IterLimit;
  (void)inner_exhausted;
  return res;
}

// --- maxmin -----------------------------------------------------------------

MaxminResult maxmin_solve(const LinearPayoffProblem& problem, const SolveOptions& options) {
  const JointSpace space(problem);
  const double gamma = problem.gamma();
  const double feas_tol = options.feasibility_tolerance * (1.0 + std::abs(gamma));
  const UtilityFamilySpec fam = problem.family();

  MaxminResult out;
  const MinRiskResult least = minimize_risk(problem, options);
  if (least.risk > gamma + feas_tol) {
    out.value = MinusInfinity{};
    out.a = least.a;
    out.eta = risk_at(problem, least.a).eta_star;
    out.converged = true;
    return out;
  }

  const CuttingPlaneOracle oracle = [&](const Eigen::VectorXd& z) {
    const Eigen::VectorXd a = space.allocation(z);
    const double eta = z[space.chart_dim()];
    const ExtendedValue inner = inner_inf_over_lambda(fam, payoff(problem, a), eta);
    OracleAnswer ans;
    if (is_minus_infinity(inner)) {
      const JointSpace::Point pt = space.evaluate(z);
      ans.feasible = false;
      ans.direction = pt.risk_grad;
      ans.depth = std::max(0.0, pt.risk_obj - gamma);
      return ans;
    }
    ans.value = std::get<double>(inner);
    ans.direction = space.grad_expected();
    return ans;
  };
  const CuttingPlaneResult cp = space.maximize(oracle, options.inner_budget, options.inner_tolerance);

  if (cp.found_feasible) {
    out.a = space.clean_allocation(cp.point);
    out.eta = cp.point[space.chart_dim()];
    out.value = space.mean_returns().dot(out.a);
    out.converged = cp.converged;
  } else {
    // The feasible set is thinner than the search resolution; the least
    // risky allocation is feasible within tolerance and is all there is.
    out.a = least.a;
    out.eta = risk_at(problem, least.a).eta_star;
    out.value = space.mean_returns().dot(least.a);
    out.converged = false;
  }
  return out;
}

ExtendedValue maxmin_value(const LinearPayoffProblem& problem, const SolveOptions& options) {
  return maxmin_solve(problem, options).value;
}

// --- saddle check -----------------------------------------------------------

double SaddleReport::relative_violation() const noexcept {
  const double worst = std::max({0.0, worst_eta_violation, worst_lambda_violation});
  return worst / (1.0 + std::abs(center_value));
}

SaddleReport verify_saddle(const LinearPayoffProblem& problem, const SolveResult& result,
                           const SaddleGrid& grid) {
  if (result.status != SolveStatus::Optimal) {
    throw std::invalid_argument("saddle verification needs an optimal solve result");
  }
  if (grid.lambda_points < 2 || grid.eta_points < 2) {
    throw std::invalid_argument("saddle grid needs at least two points per axis");
  }
  const Eigen::VectorXd& a = result.a_star;
  const double lambda_star = result.lambda_star;
  const double eta_star = result.eta_star;

  double lambda_hi = grid.lambda_max;
  if (std::isnan(lambda_hi)) lambda_hi = 2.0 * lambda_star + 1.0;
  double half = grid.eta_half_width;
  if (std::isnan(half)) {
    const ScenarioSet J = payoff(problem, a);
    half = J.max_value() - J.min_value() + 1.0;
  }

  SaddleReport rep;
  rep.lambda_points = grid.lambda_points;
  rep.eta_points = grid.eta_points;
  rep.center_value = psi(problem, a, lambda_star, eta_star);
  rep.worst_eta_violation = -std::numeric_limits<double>::infinity();
  rep.worst_lambda_violation = -std::numeric_limits<double>::infinity();

  for (std::size_t j = 0; j < grid.eta_points; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(grid.eta_points - 1);
    const double eta = eta_star - half + 2.0 * half * t;
    rep.worst_eta_violation =
        std::max(rep.worst_eta_violation, psi(problem, a, lambda_star, eta) - rep.center_value);
  }
  for (std::size_t i = 0; i < grid.lambda_points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(grid.lambda_points - 1);
    const double lambda = lambda_hi * t;
    rep.worst_lambda_violation =
        std::max(rep.worst_lambda_violation, rep.center_value - psi(problem, a, lambda, eta_star));
  }
  return rep;
}

}  // namespace riskdual
