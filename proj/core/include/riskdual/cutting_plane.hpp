#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace riskdual {

/**
 * What the oracle reports at a query point z.
 *
 * feasible: `value` = f(z) and `direction` is a supergradient of the
 * concave objective f at z.
 * infeasible: `direction` is a vector g with g.(z' - z) <= 0 for every
 * feasible z', and `depth` >= 0 how far that cut may be deepened
 * (g.(z' - z) <= -depth).
 */
struct OracleAnswer {
  bool feasible = true;
  double value = 0.0;
  Eigen::VectorXd direction;
  double depth = 0.0;
};

using CuttingPlaneOracle = std::function<OracleAnswer(const Eigen::VectorXd&)>;

struct CuttingPlaneOptions {
  std::size_t max_iterations = 20000;
  /// Stop once (upper bound - best value) <= rel_tol * (1 + |best value|).
  double rel_tol = 1e-11;
};

struct CuttingPlaneResult {
  Eigen::VectorXd point;  ///< best feasible query point
  double value = 0.0;
  double upper_bound = 0.0;  ///< certified bound on the maximum
  bool found_feasible = false;
  bool converged = false;
  std::size_t iterations = 0;
};

/**
 * Maximizes a concave function over {z : G z <= h} intersected with the
 * oracle's own convex constraints, by the deep-cut ellipsoid method.
 *
 * The search starts from the axis-aligned ellipsoid circumscribing the box
 * center +- half_widths, which must contain the feasible set. The ellipsoid
 * is stored as E = {c + B u : |u| <= 1}, so it stays positive definite by
 * construction. Dimension 0 is allowed and queries the oracle once.
 *
 * Upper bounds come from f(z*) <= f(c) + |B^T s| at every feasible center,
 * which holds because the maximizer never leaves E.
 */
CuttingPlaneResult maximize_concave(const CuttingPlaneOracle& oracle, const Eigen::MatrixXd& G,
                                    const Eigen::VectorXd& h, const Eigen::VectorXd& center,
                                    const Eigen::VectorXd& half_widths,
                                    const CuttingPlaneOptions& options = {});

}  // namespace riskdual
