#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace riskdual {

/**
 * A finite discrete distribution: atoms with finite values and nonnegative
 * probabilities summing to one.
 *
 * Atoms keep the caller's order and are never merged. Instances are
 * immutable once built; every constructor validates.
 */
class ScenarioSet {
 public:
  /// Validates and builds. Probabilities whose sum is off by at most 1e-9
  /// are renormalized; larger deviations, negative weights, non-finite
  /// values or a length mismatch throw std::invalid_argument.
  static ScenarioSet make(std::vector<double> values, std::vector<double> probs);

  /// Equiprobable atoms.
  static ScenarioSet uniform(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return values_.size(); }

  double value(std::size_t i) const { return values_.at(i); }
  double prob(std::size_t i) const { return probs_.at(i); }

  double mean() const noexcept;
  double min_value() const noexcept;
  double max_value() const noexcept;

  friend bool operator==(const ScenarioSet&, const ScenarioSet&) = default;

 private:
  ScenarioSet(std::vector<double> values, std::vector<double> probs)
      : values_(std::move(values)), probs_(std::move(probs)) {}

  std::vector<double> values_;
  std::vector<double> probs_;
};

/// Probability sums farther than this from one are rejected.
inline constexpr double kProbabilitySumTolerance = 1e-9;

ScenarioSet make_scenarios(std::vector<double> values, std::vector<double> probs);

/// Reads `value,prob` CSV with a header row. LF or CRLF line endings.
/// Syntax problems throw ParseError (with line number); content that
/// violates the ScenarioSet invariants throws InputError.
ScenarioSet scenarios_from_csv(std::istream& in);
ScenarioSet scenarios_from_csv_file(const std::string& path);

/// Emits the CSV format read by scenarios_from_csv; numbers round-trip exactly.
void write_scenarios_csv(std::ostream& out, const ScenarioSet& s);
std::string scenarios_to_csv(const ScenarioSet& s);

/**
 * n equiprobable draws from Normal(mean, std^2).
 *
 * Draw i is mean + std * normal_quantile(u_i) where u_i is the i-th open
 * uniform of CounterRng(seed). The output is bit-identical for a given seed
 * on every IEEE-754 platform with a correctly rounded libm erfc/log.
 */
ScenarioSet sample_normal(double mean, double std, std::size_t n, std::uint64_t seed);

/// Maps every value x to scale * x + shift; probabilities unchanged.
ScenarioSet affine(const ScenarioSet& s, double scale, double shift);

}  // namespace riskdual
