#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace oracle {

namespace {

double density(double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); }

template <class F>
double simpson(F f, double a, double b, int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

double pl_utility(const riskdual::OceUtility& u, double t) {
  // u(0) = 0; integrate the slopes from 0 to t.
  const auto& b = u.breakpoints();
  const auto& s = u.slopes();
  auto slope_on = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    std::size_t seg = 0;
    while (seg < b.size() && mid >= b[seg]) ++seg;
    return s[seg];
  };
  std::vector<double> cuts{0.0, t};
  for (double x : b) {
    if ((x > 0.0 && x < t) || (x < 0.0 && x > t)) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += slope_on(cuts[i], cuts[i + 1]) * (cuts[i + 1] - cuts[i]);
  }
  return t >= 0.0 ? total : -total;
}

}  // namespace

double normal_cdf(double x) {
  const double half = 0.5;
  if (x == 0.0) return half;
  const int n = std::max(2000, static_cast<int>(std::abs(x) * 4000.0));
  const double integral = simpson(density, 0.0, std::abs(x), n);
  return x > 0.0 ? half + integral : half - integral;
}

double normal_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q outside (0, 1)");
  double lo = -10.0;
  double hi = 10.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double normal_cvar_coeff(double p) {
  const double q = normal_quantile(p);
  const double tail = simpson([](double t) { return t * density(t); }, q, q + 40.0, 400000);
  return tail / (1.0 - p);
}

double expected_rho(const riskdual::RiskSpec& spec, const riskdual::ScenarioSet& X, double eta) {
  const double p = spec.p();
  long double sum = 0.0L;
  for (std::size_t i = 0; i < X.size(); ++i) {
    const double x = X.value(i);
    double r = 0.0;
    switch (spec.kind()) {
      case riskdual::RiskKind::Variance: r = (x - eta) * (x - eta); break;
      case riskdual::RiskKind::CVaR: r = eta + std::max(x - eta, 0.0) / (1.0 - p); break;
      case riskdual::RiskKind::WMd: r = std::max(p * (x - eta), (1.0 - p) * (eta - x)); break;
      case riskdual::RiskKind::OCE: r = eta - pl_utility(spec.utility(), eta - x); break;
    }
    sum += static_cast<long double>(X.prob(i)) * r;
  }
  return static_cast<double>(sum);
}

double risk(const riskdual::RiskSpec& spec, const riskdual::ScenarioSet& X) {
  if (spec.kind() == riskdual::RiskKind::Variance) {
    long double mean = 0.0L;
    for (std::size_t i = 0; i < X.size(); ++i) mean += static_cast<long double>(X.prob(i)) * X.value(i);
    long double var = 0.0L;
    for (std::size_t i = 0; i < X.size(); ++i) {
      const long double d = X.value(i) - mean;
      var += static_cast<long double>(X.prob(i)) * d * d;
    }
    return static_cast<double>(var);
  }
  std::vector<double> kinks;
  for (std::size_t i = 0; i < X.size(); ++i) {
    kinks.push_back(X.value(i));
    if (spec.kind() == riskdual::RiskKind::OCE) {
      for (double b : spec.utility().breakpoints()) kinks.push_back(X.value(i) + b);
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (double eta : kinks) best = std::min(best, oracle::expected_rho(spec, X, eta));
  return best;
}

}  // namespace oracle
