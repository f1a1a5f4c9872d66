#include <gtest/gtest.h>

#include <stdexcept>

#include "riskdual/coherence.hpp"
#include "riskdual/risk_measures.hpp"

namespace riskdual {
namespace {

constexpr std::size_t kTrials = 200;
constexpr std::uint64_t kSeed = 1;

TEST(CheckAxiom, CvarTranslationInvariant) {
  const AxiomReport r = check_axiom(RiskSpec::cvar(0.95), Axiom::TranslationInvariance, kTrials, kSeed);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(r.trials, kTrials);
}

TEST(CheckAxiom, VarianceNotTranslationInvariant) {
  const AxiomReport r =
      check_axiom(RiskSpec::variance(), Axiom::TranslationInvariance, kTrials, kSeed);
  ASSERT_FALSE(r.holds);
  ASSERT_TRUE(r.witness.has_value());
  const AxiomWitness& w = *r.witness;
  EXPECT_NE(w.scalar, 0.0);
  // var(X + m) = var(X), so the two sides differ by exactly m.
  EXPECT_NEAR(w.lhs - w.rhs, -w.scalar, 1e-9 * (1.0 + std::abs(w.lhs) + std::abs(w.rhs)));
}

TEST(CheckAxiom, VarianceConvex) {
  EXPECT_TRUE(check_axiom(RiskSpec::variance(), Axiom::Convexity, kTrials, kSeed).holds);
}

TEST(CheckAxiom, WmdPositivelyHomogeneous) {
  EXPECT_TRUE(check_axiom(RiskSpec::wmd(0.5), Axiom::PositiveHomogeneity, kTrials, kSeed).holds);
}

TEST(CheckAxiom, CvarPassesEverything) {
  for (const AxiomReport& r : check_all_axioms(RiskSpec::cvar(0.95), kTrials, kSeed)) {
    EXPECT_TRUE(r.holds) << to_string(r.axiom);
    EXPECT_EQ(r.trials, kTrials);
  }
}

TEST(CheckAxiom, VarianceVerdicts) {
  const auto reports = check_all_axioms(RiskSpec::variance(), kTrials, kSeed);
  for (const AxiomReport& r : reports) {
    switch (r.axiom) {
      case Axiom::TranslationInvariance:
      case Axiom::PositiveHomogeneity:
        EXPECT_FALSE(r.holds) << to_string(r.axiom);
        EXPECT_TRUE(r.witness.has_value());
        break;
      case Axiom::Convexity:
        EXPECT_TRUE(r.holds);
        break;
      default:
        break;
    }
  }
}

TEST(CheckAxiom, WmdVerdicts) {
  // A deviation measure: not translation invariant but convex and homogeneous.
  const auto reports = check_all_axioms(RiskSpec::wmd(0.7), kTrials, kSeed);
  for (const AxiomReport& r : reports) {
    if (r.axiom == Axiom::TranslationInvariance) {
      EXPECT_FALSE(r.holds);
    } else if (r.axiom == Axiom::Convexity || r.axiom == Axiom::PositiveHomogeneity ||
               r.axiom == Axiom::Subadditivity) {
      EXPECT_TRUE(r.holds) << to_string(r.axiom);
    }
  }
}

TEST(CheckAxiom, OceMonotoneTranslationInvariantConvex) {
  const RiskSpec spec = RiskSpec::oce(OceUtility::make({0.0}, {1.0, 0.5}));
  for (Axiom a : {Axiom::Monotonicity, Axiom::TranslationInvariance, Axiom::Convexity}) {
    EXPECT_TRUE(check_axiom(spec, a, 50, kSeed).holds) << to_string(a);
  }
}

TEST(CheckAxiom, Deterministic) {
  for (Axiom a : kAllAxioms) {
    const AxiomReport r1 = check_axiom(RiskSpec::variance(), a, 50, 9);
    const AxiomReport r2 = check_axiom(RiskSpec::variance(), a, 50, 9);
    EXPECT_EQ(r1.holds, r2.holds);
    EXPECT_EQ(r1.trials, r2.trials);
    ASSERT_EQ(r1.witness.has_value(), r2.witness.has_value());
    if (r1.witness) {
      EXPECT_EQ(r1.witness->x1, r2.witness->x1);
      EXPECT_EQ(r1.witness->x2, r2.witness->x2);
      EXPECT_EQ(r1.witness->scalar, r2.witness->scalar);
      EXPECT_EQ(r1.witness->lhs, r2.witness->lhs);
      EXPECT_EQ(r1.witness->rhs, r2.witness->rhs);
    }
  }
}

TEST(CheckAxiom, WitnessesReproduce) {
  for (const RiskSpec& spec : {RiskSpec::variance(), RiskSpec::wmd(0.3)}) {
    for (const AxiomReport& r : check_all_axioms(spec, kTrials, 3)) {
      if (r.holds) continue;
      ASSERT_TRUE(r.witness.has_value());
      EXPECT_TRUE(witness_reproduces(spec, r.axiom, *r.witness)) << to_string(r.axiom);
      EXPECT_LE(r.trials, kTrials);
      EXPECT_EQ(r.witness->x1.size(), r.witness->x2.size());
      EXPECT_GE(r.witness->x1.size(), 2u);
      EXPECT_LE(r.witness->x1.size(), 20u);
    }
  }
}

TEST(CheckAxiom, MonotonicityWitnessIsDominated) {
  // Variance is not monotone; a witness must satisfy x1 <= x2 atomwise.
  const AxiomReport r = check_axiom(RiskSpec::variance(), Axiom::Monotonicity, kTrials, kSeed);
  ASSERT_FALSE(r.holds);
  const AxiomWitness& w = *r.witness;
  for (std::size_t i = 0; i < w.x1.size(); ++i) EXPECT_LE(w.x1.value(i), w.x2.value(i));
  EXPECT_GT(w.lhs, w.rhs);
}

TEST(CheckAxiom, ZeroTrialsRejected) {
  EXPECT_THROW(check_axiom(RiskSpec::cvar(0.9), Axiom::Convexity, 0, 1), std::invalid_argument);
  EXPECT_THROW(check_all_axioms(RiskSpec::cvar(0.9), 0, 1), std::invalid_argument);
}

TEST(Axiom, Names) {
  EXPECT_EQ(to_string(Axiom::Monotonicity), "monotonicity");
  EXPECT_TRUE(is_equality_axiom(Axiom::TranslationInvariance));
  EXPECT_TRUE(is_equality_axiom(Axiom::PositiveHomogeneity));
  EXPECT_FALSE(is_equality_axiom(Axiom::Subadditivity));
}

}  // namespace
}  // namespace riskdual
