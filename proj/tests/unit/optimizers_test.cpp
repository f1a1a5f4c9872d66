#include <gtest/gtest.h>

#include <cmath>

#include "riskdual/cutting_plane.hpp"
#include "riskdual/errors.hpp"
#include "riskdual/golden_section.hpp"

namespace riskdual {
namespace {

TEST(GoldenSection, Quadratic) {
  const Minimum1D m = golden_section_minimize([](double x) { return (x - 1.25) * (x - 1.25) + 3.0; },
                                              -10.0, 10.0, 1e-10);
  EXPECT_TRUE(m.converged);
  EXPECT_NEAR(m.argmin, 1.25, 1e-5);
  EXPECT_NEAR(m.value, 3.0, 1e-10);
}

TEST(GoldenSection, MinimumAtEndpoint) {
  const Minimum1D m = golden_section_minimize([](double x) { return x; }, 2.0, 5.0, 1e-9);
  EXPECT_EQ(m.argmin, 2.0);
  EXPECT_EQ(m.value, 2.0);
}

TEST(GoldenSection, IterationCap) {
  const Minimum1D m = golden_section_minimize([](double x) { return std::abs(x); }, -1.0, 1.0, 1e-12, 5);
  EXPECT_FALSE(m.converged);
  EXPECT_EQ(m.iterations, 5u);
}

TEST(MinimizeConvex, FindsDistantMinimizer) {
  const Minimum1D m = minimize_convex([](double x) { return std::abs(x - 1e6); }, 0.0, 1.0, 1e-6);
  EXPECT_NEAR(m.argmin, 1e6, 1e-5);
  EXPECT_LE(m.lo, 1e6);
  EXPECT_GE(m.hi, 1e6);
  const Minimum1D n = minimize_convex([](double x) { return std::abs(x + 3e4); }, 0.0, 1.0, 1e-6);
  EXPECT_NEAR(n.argmin, -3e4, 1e-5);
}

TEST(MinimizeConvex, FlatTail) {
  // Minimizers form the half-line x <= 100.
  auto f = [](double x) { return std::max(0.0, x - 100.0); };
  const Minimum1D m = minimize_convex(f, 200.0, 300.0, 1e-9);
  EXPECT_EQ(m.value, 0.0);
  EXPECT_LE(m.argmin, 100.0);
}

TEST(MinimizeConvex, LinearHasNoMinimizer) {
  EXPECT_THROW(minimize_convex([](double x) { return -2.0 * x; }, 0.0, 1.0, 1e-9), BracketError);
  EXPECT_THROW(minimize_convex([](double x) { return x; }, 0.0, 1.0, 1e-9), BracketError);
}

TEST(MaximizeConcave, QuadraticOnBox) {
  // max -(z - t)^2 over [0,1]^2 with t = (0.3, 2.0): optimum at (0.3, 1).
  Eigen::Vector2d t(0.3, 2.0);
  CuttingPlaneOracle oracle = [&](const Eigen::VectorXd& z) {
    OracleAnswer ans;
    ans.value = -(z - t).squaredNorm();
    ans.direction = -2.0 * (z - t);
    return ans;
  };
  Eigen::MatrixXd G(4, 2);
  G << -1, 0, 1, 0, 0, -1, 0, 1;
  Eigen::VectorXd h(4);
  h << 0, 1, 0, 1;
  const CuttingPlaneResult r =
      maximize_concave(oracle, G, h, Eigen::Vector2d(0.5, 0.5), Eigen::Vector2d(0.5, 0.5));
  ASSERT_TRUE(r.found_feasible);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.point[0], 0.3, 1e-5);
  EXPECT_NEAR(r.point[1], 1.0, 1e-5);
  EXPECT_NEAR(r.value, -1.0, 1e-9);
  EXPECT_GE(r.upper_bound, r.value);
  EXPECT_LE(r.upper_bound - r.value, 1e-9);
}

TEST(MaximizeConcave, NonsmoothWithOracleConstraint) {
  // max z0 + z1 - |z0 - z1| subject to z0^2 + z1^2 <= 1: optimum sqrt(2) at the diagonal.
  CuttingPlaneOracle oracle = [](const Eigen::VectorXd& z) {
    OracleAnswer ans;
    const double c = z.squaredNorm() - 1.0;
    if (c > 0.0) {
      ans.feasible = false;
      ans.direction = 2.0 * z;
      ans.depth = c;
      return ans;
    }
    const double s = z[0] >= z[1] ? 1.0 : -1.0;
    ans.value = z[0] + z[1] - std::abs(z[0] - z[1]);
    ans.direction = Eigen::Vector2d(1.0 - s, 1.0 + s);
    return ans;
  };
  const CuttingPlaneResult r = maximize_concave(oracle, Eigen::MatrixXd(0, 2), Eigen::VectorXd(0),
                                                Eigen::Vector2d::Zero(), Eigen::Vector2d(1.0, 1.0));
  ASSERT_TRUE(r.found_feasible);
  EXPECT_NEAR(r.value, std::sqrt(2.0), 1e-8);
  EXPECT_LE(r.point.squaredNorm(), 1.0);
}

TEST(MaximizeConcave, ZeroDimensional) {
  int calls = 0;
  CuttingPlaneOracle oracle = [&](const Eigen::VectorXd&) {
    ++calls;
    OracleAnswer ans;
    ans.value = 4.0;
    ans.direction = Eigen::VectorXd(0);
    return ans;
  };
  const CuttingPlaneResult r = maximize_concave(oracle, Eigen::MatrixXd(0, 0), Eigen::VectorXd(0),
                                                Eigen::VectorXd(0), Eigen::VectorXd(0));
  EXPECT_EQ(calls, 1);
  EXPECT_TRUE(r.found_feasible);
  EXPECT_EQ(r.value, 4.0);
}

TEST(MaximizeConcave, EmptyFeasibleSet) {
  CuttingPlaneOracle oracle = [](const Eigen::VectorXd& z) {
    OracleAnswer ans;
    ans.value = z[0];
    ans.direction = Eigen::VectorXd::Ones(1);
    return ans;
  };
  Eigen::MatrixXd G(2, 1);
  G << 1, -1;
  Eigen::VectorXd h(2);
  h << 0.2, -0.8;  // z <= 0.2 and z >= 0.8
  CuttingPlaneOptions opts;
  opts.max_iterations = 500;
  const CuttingPlaneResult r =
      maximize_concave(oracle, G, h, Eigen::VectorXd::Constant(1, 0.5), Eigen::VectorXd::Constant(1, 0.5), opts);
  EXPECT_FALSE(r.found_feasible);
}

}  // namespace
}  // namespace riskdual
