#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "riskdual/risk_measures.hpp"
#include "riskdual/scenario.hpp"

namespace riskdual {

enum class Axiom {
  Monotonicity,
  TranslationInvariance,
  PositiveHomogeneity,
  Convexity,
  Subadditivity,
};

inline constexpr std::array<Axiom, 5> kAllAxioms = {
    Axiom::Monotonicity, Axiom::TranslationInvariance, Axiom::PositiveHomogeneity,
    Axiom::Convexity, Axiom::Subadditivity};

std::string to_string(Axiom axiom);

/// True for axioms asserting an equality (translation, homogeneity).
bool is_equality_axiom(Axiom axiom) noexcept;

/**
 * A concrete instance on which an axiom failed.
 *
 * x1 and x2 share one probability vector. `scalar` is the shift m for
 * translation invariance, the scale for positive homogeneity, the mixing
 * weight for convexity and unused otherwise. The axiom states lhs <= rhs
 * (or lhs == rhs for the equality axioms):
 *   Monotonicity           Risk(x1)              vs Risk(x2), x1 <= x2 atomwise
 *   TranslationInvariance  Risk(x1 + m)          vs Risk(x1) + m
 *   PositiveHomogeneity    Risk(t x1)            vs t Risk(x1)
 *   Convexity              Risk(t x1 + (1-t) x2) vs t Risk(x1) + (1-t) Risk(x2)
 *   Subadditivity          Risk(x1 + x2)         vs Risk(x1) + Risk(x2)
 */
struct AxiomWitness {
  ScenarioSet x1;
  ScenarioSet x2;
  double scalar = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct AxiomReport {
  Axiom axiom = Axiom::Monotonicity;
  bool holds = true;
  std::optional<AxiomWitness> witness;
  std::size_t trials = 0;  ///< trials run; stops at the first failure
};

inline constexpr double kDefaultAxiomTolerance = 1e-9;

/**
 * Tests one axiom on `trials` pseudo-random instances.
 *
 * Trial t draws from CounterRng(seed, t): m in [2, 20] atoms with a shared
 * probability vector, two value vectors uniform in [-50, 50], a shift in
 * [-20, 20], a scale in (0, 10] and a mixing weight in (0, 1). A trial fails
 * when the inequality is violated by more than tol * (1 + |lhs| + |rhs|).
 * The first failing trial becomes the witness. A passing verdict is
 * evidence over the trials, not a proof.
 *
 * Throws std::invalid_argument when trials == 0.
 */
AxiomReport check_axiom(const RiskSpec& spec, Axiom axiom, std::size_t trials,
                        std::uint64_t seed, double tol = kDefaultAxiomTolerance);

std::array<AxiomReport, 5> check_all_axioms(const RiskSpec& spec, std::size_t trials,
                                            std::uint64_t seed,
                                            double tol = kDefaultAxiomTolerance);

/// Recomputes both sides of the witness from scratch and reports whether
/// the violation is still beyond tolerance.
bool witness_reproduces(const RiskSpec& spec, Axiom axiom, const AxiomWitness& witness,
                        double tol = kDefaultAxiomTolerance);

}  // namespace riskdual
