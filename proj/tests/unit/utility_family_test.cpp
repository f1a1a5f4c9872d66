#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "riskdual/random.hpp"
#include "riskdual/risk_measures.hpp"
#include "riskdual/scenario.hpp"
#include "riskdual/utility_family.hpp"

namespace riskdual {
namespace {

std::vector<RiskSpec> all_kinds() {
  return {RiskSpec::variance(), RiskSpec::cvar(0.95), RiskSpec::wmd(0.3),
          RiskSpec::oce(OceUtility::make({-1.0, 0.0, 2.0}, {3.0, 1.2, 0.7, 0.2}))};
}

TEST(UtilityValue, LambdaZeroIsIdentity) {
  for (const RiskSpec& r : all_kinds()) {
    const UtilityFamilySpec fam{r, 17.0};
    for (double x : {-3.5, 0.0, 1e6}) EXPECT_EQ(utility_value(fam, 0.0, x, 2.25), x);
  }
}

TEST(UtilityValue, CvarAtKink) {
  EXPECT_NEAR(utility_value({RiskSpec::cvar(0.95), 0.0}, 0.05, 1.0, -1.0), 1.05, 1e-15);
}

TEST(UtilityValue, VarianceExample) {
  EXPECT_EQ(utility_value({RiskSpec::variance(), 2.0}, 1.0, 0.0, 0.0), 2.0);
}

TEST(UtilityValue, RejectsNegativeLambda) {
  EXPECT_THROW(utility_value({RiskSpec::variance(), 0.0}, -1e-9, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(expected_utility({RiskSpec::variance(), 0.0}, -1.0, ScenarioSet::uniform({1.0}), 0.0),
               std::invalid_argument);
}

TEST(UtilityValue, AffineInLambdaWithZeroIntercept) {
  CounterRng rng(5);
  for (const RiskSpec& r : all_kinds()) {
    for (int k = 0; k < 50; ++k) {
      const UtilityFamilySpec fam{r, rng.uniform(-20.0, 20.0)};
      const double x = rng.uniform(-10.0, 10.0);
      const double eta = rng.uniform(-10.0, 10.0);
      const double lambda = rng.uniform(0.0, 5.0);
      const double unit = utility_value(fam, 1.0, x, eta) - x;
      const double got = utility_value(fam, lambda, x, eta) - x;
      EXPECT_NEAR(got, lambda * unit, 1e-12 * (1.0 + std::abs(lambda * unit)));
    }
  }
}

TEST(UtilityValue, CvarShapeAroundKink) {
  const double p = 0.9;
  const double gamma = 3.0;
  const UtilityFamilySpec fam{RiskSpec::cvar(p), gamma};
  CounterRng rng(11);
  for (int k = 0; k < 100; ++k) {
    const double lambda = rng.uniform(0.0, 4.0);
    const double eta = rng.uniform(-50.0, 50.0);
    const double above = -eta + rng.uniform(0.0, 30.0);
    EXPECT_DOUBLE_EQ(utility_value(fam, lambda, above, eta), above - lambda * eta + lambda * gamma);
    const double x0 = -eta - rng.uniform(1.0, 30.0);
    const double h = 0.5;
    const double slope =
        (utility_value(fam, lambda, x0 + h, eta) - utility_value(fam, lambda, x0 - h, eta)) / (2 * h);
    const double theta = loss_aversion_theta(lambda, p);
    EXPECT_NEAR(slope, theta, 1e-9 * theta);
  }
}

TEST(ExpectedUtility, Examples) {
  const ScenarioSet two = ScenarioSet::uniform({0.0, 10.0});
  EXPECT_EQ(expected_utility({RiskSpec::cvar(0.9), 4.0}, 0.0, two, 1.0), 5.0);
  EXPECT_NEAR(expected_utility({RiskSpec::cvar(0.5), 0.0}, 1.0, ScenarioSet::uniform({-2.0}), 0.0),
              -6.0, 1e-15);
  EXPECT_EQ(expected_utility({RiskSpec::variance(), 0.0}, 1.0, ScenarioSet::uniform({-1.0, 1.0}), 0.0),
            -1.0);
}

TEST(ExpectedUtility, MatchesRiskDecomposition) {
  CounterRng rng(21);
  for (const RiskSpec& r : all_kinds()) {
    for (int k = 0; k < 40; ++k) {
      const auto m = static_cast<std::size_t>(rng.uniform(1.0, 31.0));
      std::vector<double> xs(m);
      for (double& x : xs) x = rng.uniform(-100.0, 100.0);
      const ScenarioSet J = ScenarioSet::uniform(xs);
      const UtilityFamilySpec fam{r, rng.uniform(-50.0, 50.0)};
      const double lambda = rng.uniform(0.0, 3.0);
      const double eta = rng.uniform(-100.0, 100.0);
      const double expect =
          J.mean() + lambda * (fam.gamma - oracle::expected_rho(r, affine(J, -1.0, 0.0), eta));
      EXPECT_NEAR(expected_utility(fam, lambda, J, eta), expect, 1e-12 * (1.0 + std::abs(expect)))
          << r.label();
    }
  }
}

TEST(InnerInfOverLambda, Examples) {
  const ScenarioSet J = ScenarioSet::uniform({0.0, 10.0});
  const ExtendedValue ok = inner_inf_over_lambda({RiskSpec::variance(), 100.0}, J, -5.0);
  ASSERT_FALSE(is_minus_infinity(ok));
  EXPECT_EQ(std::get<double>(ok), 5.0);
  EXPECT_TRUE(is_minus_infinity(inner_inf_over_lambda({RiskSpec::variance(), 10.0}, J, -5.0)));
}

TEST(InnerInfOverLambda, EqualityIsFeasible) {
  const ScenarioSet J = ScenarioSet::uniform({0.0, 10.0});
  // E[(-J + 5)^2] = 25 exactly.
  const ExtendedValue v = inner_inf_over_lambda({RiskSpec::variance(), 25.0}, J, -5.0);
  ASSERT_FALSE(is_minus_infinity(v));
  EXPECT_EQ(std::get<double>(v), 5.0);
}

TEST(LossAversionTheta, Examples) {
  EXPECT_EQ(loss_aversion_theta(0.0, 0.95), 1.0);
  EXPECT_NEAR(loss_aversion_theta(0.2853, 0.95), 6.706, 1e-9);
  EXPECT_EQ(loss_aversion_theta(1.0, 0.5), 3.0);
  EXPECT_THROW(loss_aversion_theta(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(loss_aversion_theta(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(loss_aversion_theta(-1.0, 0.5), std::invalid_argument);
}

double segment_slope(const std::vector<UtilityPoint>& c, std::size_t i) {
  return (c[i + 1].utility - c[i].utility) / (c[i + 1].x - c[i].x);
}

TEST(UtilityCurve, CvarRightSlopeIsOne) {
  const auto c = utility_curve({RiskSpec::cvar(0.95), 0.0}, 0.05, 0.0, -1.0, 1.0, 3);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(segment_slope(c, 1), 1.0, 1e-12);
  EXPECT_NEAR(segment_slope(c, 0), loss_aversion_theta(0.05, 0.95), 1e-12);
}

TEST(UtilityCurve, CvarLeftSlopeIsTheta) {
  const auto c = utility_curve({RiskSpec::cvar(0.5), 0.0}, 1.0, 0.0, -2.0, 0.0, 3);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(segment_slope(c, 0), 3.0, 1e-12);
  EXPECT_NEAR(segment_slope(c, 1), 3.0, 1e-12);
}

TEST(UtilityCurve, LambdaZeroIsIdentityLine) {
  for (const RiskSpec& r : all_kinds()) {
    for (const UtilityPoint& pt : utility_curve({r, 5.0}, 0.0, 1.5, -10.0, 10.0, 7)) {
      EXPECT_EQ(pt.utility, pt.x);
    }
  }
}

TEST(UtilityCurve, InsertsKinks) {
  const auto c = utility_curve({RiskSpec::cvar(0.9), 0.0}, 1.0, -0.3, -1.0, 1.0, 3);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c[2].x, 0.3);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const double expect = c[i].x >= 0.3 ? 1.0 : loss_aversion_theta(1.0, 0.9);
    EXPECT_NEAR(segment_slope(c, i), expect, 1e-9) << i;
  }

  const RiskSpec oce = RiskSpec::oce(OceUtility::make({-1.0, 0.0, 2.0}, {3.0, 1.2, 0.7, 0.2}));
  const auto d = utility_curve({oce, 0.0}, 1.0, 0.5, -5.0, 5.0, 2);
  std::vector<double> xs;
  for (const UtilityPoint& pt : d) xs.push_back(pt.x);
  EXPECT_EQ(xs, (std::vector<double>{-5.0, -1.5, -0.5, 1.5, 5.0}));
}

TEST(UtilityCurve, EndpointsAndOrder) {
  const auto c = utility_curve({RiskSpec::variance(), 1.0}, 0.5, 0.0, -3.0, 7.0, 11);
  ASSERT_EQ(c.size(), 11u);
  EXPECT_EQ(c.front().x, -3.0);
  EXPECT_EQ(c.back().x, 7.0);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) EXPECT_LT(c[i].x, c[i + 1].x);
}

TEST(UtilityCurve, RejectsBadRange) {
  const UtilityFamilySpec fam{RiskSpec::cvar(0.9), 0.0};
  EXPECT_THROW(utility_curve(fam, 1.0, 0.0, 1.0, 1.0, 3), std::invalid_argument);
  EXPECT_THROW(utility_curve(fam, 1.0, 0.0, 0.0, 1.0, 1), std::invalid_argument);
}

}  // namespace
}  // namespace riskdual
