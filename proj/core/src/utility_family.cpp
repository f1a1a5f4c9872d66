#include "riskdual/utility_family.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace riskdual {

namespace {

void require_lambda(double lambda) {
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("lambda must be nonnegative, got " + std::to_string(lambda));
  }
}

}  // namespace

double utility_value(const UtilityFamilySpec& fam, double lambda, double x, double eta) {
  require_lambda(lambda);
  return x + lambda * (-rho(fam.risk, -x, eta) + fam.gamma);
}

double expected_utility(const UtilityFamilySpec& fam, double lambda, const ScenarioSet& payoff,
                        double eta) {
  require_lambda(lambda);
  double sum = 0.0;
  const auto v = payoff.values();
  const auto p = payoff.probs();
  for (std::size_t i = 0; i < v.size(); ++i) sum += p[i] * utility_value(fam, lambda, v[i], eta);
  return sum;
}

ExtendedValue inner_inf_over_lambda(const UtilityFamilySpec& fam, const ScenarioSet& payoff,
                                    double eta) {
  double expected_loss_rho = 0.0;
  const auto v = payoff.values();
  const auto p = payoff.probs();
  for (std::size_t i = 0; i < v.size(); ++i) expected_loss_rho += p[i] * rho(fam.risk, -v[i], eta);
  if (expected_loss_rho <= fam.gamma) return payoff.mean();
  return MinusInfinity{};
}

double loss_aversion_theta(double lambda, double p) {
  require_lambda(lambda);
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("confidence level p must lie in (0, 1), got " + std::to_string(p));
  }
  return 1.0 + lambda / (1.0 - p);
}

std::vector<UtilityPoint> utility_curve(const UtilityFamilySpec& fam, double lambda, double eta,
                                        double x_min, double x_max, std::size_t n) {
  require_lambda(lambda);
  if (!(x_min < x_max)) throw std::invalid_argument("utility curve needs x_min < x_max");
  if (n < 2) throw std::invalid_argument("utility curve needs at least two points");

  std::vector<double> xs;
  xs.reserve(n + 4);
  const double step = (x_max - x_min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) xs.push_back(x_min + step * static_cast<double>(i));
  xs.push_back(x_max);

  std::vector<double> kinks;
  switch (fam.risk.kind()) {
    case RiskKind::CVaR:
    case RiskKind::WMd:
      kinks.push_back(-eta);
      break;
    case RiskKind::OCE:
      // rho(-x, eta) = eta - u(eta + x) bends where eta + x hits a breakpoint.
      for (double b : fam.risk.utility().breakpoints()) kinks.push_back(b - eta);
      break;
    case RiskKind::Variance:
      break;
  }
  for (double k : kinks) {
    if (k > x_min && k < x_max && std::find(xs.begin(), xs.end(), k) == xs.end()) xs.push_back(k);
  }
  std::sort(xs.begin(), xs.end());

  std::vector<UtilityPoint> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back({x, utility_value(fam, lambda, x, eta)});
  return out;
}

}  // namespace riskdual
