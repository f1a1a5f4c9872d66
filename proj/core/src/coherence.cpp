#include "riskdual/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "riskdual/random.hpp"

namespace riskdual {

namespace {

// evaluate_risk is only needed for OCE; keep it tight so that equality
// axioms are not drowned in search error.
constexpr double kSearchTolerance = 1e-13;

double risk(const RiskSpec& spec, const ScenarioSet& x) {
  return risk_of(spec, x, kSearchTolerance).value;
}

ScenarioSet with_values(const ScenarioSet& like, std::vector<double> values) {
  return ScenarioSet::make(std::move(values),
                           std::vector<double>(like.probs().begin(), like.probs().end()));
}

ScenarioSet combine(const ScenarioSet& a, double wa, const ScenarioSet& b, double wb) {
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = wa * a.values()[i] + wb * b.values()[i];
  return with_values(a, std::move(v));
}

std::pair<double, double> sides(const RiskSpec& spec, Axiom axiom, const AxiomWitness& w) {
  switch (axiom) {
    case Axiom::Monotonicity:
      return {risk(spec, w.x1), risk(spec, w.x2)};
    case Axiom::TranslationInvariance:
      return {risk(spec, affine(w.x1, 1.0, w.scalar)), risk(spec, w.x1) + w.scalar};
    case Axiom::PositiveHomogeneity:
      return {risk(spec, affine(w.x1, w.scalar, 0.0)), w.scalar * risk(spec, w.x1)};
    case Axiom::Convexity: {
      const double t = w.scalar;
      return {risk(spec, combine(w.x1, t, w.x2, 1.0 - t)),
              t * risk(spec, w.x1) + (1.0 - t) * risk(spec, w.x2)};
    }
    case Axiom::Subadditivity:
      return {risk(spec, combine(w.x1, 1.0, w.x2, 1.0)), risk(spec, w.x1) + risk(spec, w.x2)};
  }
  return {0.0, 0.0};
}

bool violated(Axiom axiom, double lhs, double rhs, double tol) {
  const double slack = tol * (1.0 + std::abs(lhs) + std::abs(rhs));
  if (is_equality_axiom(axiom)) return std::abs(lhs - rhs) > slack;
  return lhs > rhs + slack;
}

AxiomWitness draw_instance(Axiom axiom, std::uint64_t seed, std::size_t trial) {
  CounterRng rng(seed, trial);
  const std::size_t m = rng.uniform_index(2, 20);

  std::vector<double> weights(m);
  double total = 0.0;
  for (double& w : weights) {
    w = rng.uniform_open();
    total += w;
  }
  for (double& w : weights) w /= total;

  std::vector<double> v1(m);
  std::vector<double> v2(m);
  for (double& v : v1) v = rng.uniform(-50.0, 50.0);
  for (double& v : v2) v = rng.uniform(-50.0, 50.0);
  const double shift = rng.uniform(-20.0, 20.0);
  const double scale = 10.0 * (1.0 - rng.uniform(0.0, 1.0));  // (0, 10]
  const double mix = rng.uniform_open();

  if (axiom == Axiom::Monotonicity) {
    for (std::size_t i = 0; i < m; ++i) {
      if (v1[i] > v2[i]) std::swap(v1[i], v2[i]);
    }
  }
  double scalar = 0.0;
  switch (axiom) {
    case Axiom::TranslationInvariance: scalar = shift; break;
    case Axiom::PositiveHomogeneity: scalar = scale; break;
    case Axiom::Convexity: scalar = mix; break;
    default: break;
  }
  ScenarioSet x1 = ScenarioSet::make(std::move(v1), weights);
  ScenarioSet x2 = ScenarioSet::make(std::move(v2), std::move(weights));
  return AxiomWitness{std::move(x1), std::move(x2), scalar, 0.0, 0.0};
}

}  // namespace

std::string to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::Monotonicity: return "monotonicity";
    case Axiom::TranslationInvariance: return "translation-invariance";
    case Axiom::PositiveHomogeneity: return "positive-homogeneity";
    case Axiom::Convexity: return "convexity";
    case Axiom::Subadditivity: return "subadditivity";
  }
  return "unknown";
}

bool is_equality_axiom(Axiom axiom) noexcept {
  return axiom == Axiom::TranslationInvariance || axiom == Axiom::PositiveHomogeneity;
}

AxiomReport check_axiom(const RiskSpec& spec, Axiom axiom, std::size_t trials,
                        std::uint64_t seed, double tol) {
  if (trials == 0) throw std::invalid_argument("at least one trial is required");
  AxiomReport report;
  report.axiom = axiom;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    AxiomWitness w = draw_instance(axiom, seed, t);
    const auto [lhs, rhs] = sides(spec, axiom, w);
    if (violated(axiom, lhs, rhs, tol)) {
      w.lhs = lhs;
      w.rhs = rhs;
      report.holds = false;
      report.witness = std::move(w);
      report.trials = t + 1;
      break;
    }
  }
  return report;
}

std::array<AxiomReport, 5> check_all_axioms(const RiskSpec& spec, std::size_t trials,
                                            std::uint64_t seed, double tol) {
  std::array<AxiomReport, 5> out;
  for (std::size_t i = 0; i < kAllAxioms.size(); ++i) {
    out[i] = check_axiom(spec, kAllAxioms[i], trials, seed, tol);
  }
  return out;
}

bool witness_reproduces(const RiskSpec& spec, Axiom axiom, const AxiomWitness& witness,
                        double tol) {
  const auto [lhs, rhs] = sides(spec, axiom, witness);
  return violated(axiom, lhs, rhs, tol);
}

}  // namespace riskdual
