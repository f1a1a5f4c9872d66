#include "riskdual/risk_measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "riskdual/golden_section.hpp"

namespace riskdual {

// --- OceUtility -------------------------------------------------------------

OceUtility OceUtility::make(std::vector<double> breakpoints, std::vector<double> slopes) {
  if (slopes.size() != breakpoints.size() + 1) {
    throw std::invalid_argument("OCE utility needs exactly one more slope than breakpoints");
  }
  for (double b : breakpoints) {
    if (!std::isfinite(b)) throw std::invalid_argument("OCE breakpoints must be finite");
  }
  for (double s : slopes) {
    if (!std::isfinite(s) || s < 0.0) {
      throw std::invalid_argument("OCE slopes must be finite and nonnegative");
    }
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) {
      throw std::invalid_argument("OCE breakpoints must be strictly increasing");
    }
  }
  for (std::size_t i = 1; i < slopes.size(); ++i) {
    if (!(slopes[i] < slopes[i - 1])) {
      throw std::invalid_argument("OCE slopes must be strictly decreasing (concave utility)");
    }
  }
  if (!(slopes.back() < 1.0)) {
    throw std::invalid_argument("OCE rightmost slope must be below 1");
  }

  OceUtility u;
  u.breakpoints_ = std::move(breakpoints);
  u.slopes_ = std::move(slopes);

  const auto& b = u.breakpoints_;
  const auto& s = u.slopes_;
  const std::size_t j0 = u.segment(0.0);
  const bool zero_is_break = j0 >= 1 && b[j0 - 1] == 0.0;
  if (zero_is_break) {
    if (!(s[j0 - 1] >= 1.0 && s[j0] <= 1.0)) {
      throw std::invalid_argument("OCE utility must have 1 as a supergradient at 0");
    }
  } else if (s[j0] != 1.0) {
    throw std::invalid_argument("OCE utility must have 1 as a supergradient at 0");
  }

  // u is s[j0] * t on the segment holding 0; walk outward from there.
  u.value_at_break_.assign(b.size(), 0.0);
  if (j0 < b.size()) u.value_at_break_[j0] = s[j0] * b[j0];
  if (j0 >= 1) u.value_at_break_[j0 - 1] = s[j0] * b[j0 - 1];
  for (std::size_t i = j0 + 1; i < b.size(); ++i) {
    u.value_at_break_[i] = u.value_at_break_[i - 1] + s[i] * (b[i] - b[i - 1]);
  }
  for (std::size_t i = j0 >= 1 ? j0 - 1 : 0; i-- > 0;) {
    u.value_at_break_[i] = u.value_at_break_[i + 1] - s[i + 1] * (b[i + 1] - b[i]);
  }
  return u;
}

std::size_t OceUtility::segment(double t) const {
  return static_cast<std::size_t>(
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t) - breakpoints_.begin());
}

double OceUtility::operator()(double t) const {
  if (breakpoints_.empty()) return slopes_[0] * t;
  const std::size_t j = segment(t);
  if (j == 0) return value_at_break_[0] + slopes_[0] * (t - breakpoints_[0]);
  return value_at_break_[j - 1] + slopes_[j] * (t - breakpoints_[j - 1]);
}

double OceUtility::slope_at(double t) const { return slopes_[segment(t)]; }

// --- RiskSpec ---------------------------------------------------------------

namespace {

void require_level(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("confidence level p must lie in (0, 1), got " +
                                std::to_string(p));
  }
}

}  // namespace

RiskSpec RiskSpec::variance() { return RiskSpec(RiskKind::Variance, 0.0); }

RiskSpec RiskSpec::cvar(double p) {
  require_level(p);
  return RiskSpec(RiskKind::CVaR, p);
}

RiskSpec RiskSpec::wmd(double p) {
  require_level(p);
  return RiskSpec(RiskKind::WMd, p);
}

RiskSpec RiskSpec::oce(OceUtility u) {
  RiskSpec spec(RiskKind::OCE, 0.0);
  spec.utility_.push_back(std::move(u));
  return spec;
}

const OceUtility& RiskSpec::utility() const {
  if (kind_ != RiskKind::OCE) throw std::logic_error("risk spec has no OCE utility");
  return utility_.front();
}

std::string RiskSpec::label() const {
  std::ostringstream os;
  os << to_string(kind_);
  if (kind_ == RiskKind::CVaR || kind_ == RiskKind::WMd) os << "(p=" << p_ << ")";
  return os.str();
}

std::string to_string(RiskKind kind) {
  switch (kind) {
    case RiskKind::Variance: return "variance";
    case RiskKind::CVaR: return "cvar";
    case RiskKind::WMd: return "wmd";
    case RiskKind::OCE: return "oce";
  }
  return "unknown";
}

// --- rho --------------------------------------------------------------------

double rho(const RiskSpec& spec, double x, double eta) {
  switch (spec.kind()) {
    case RiskKind::Variance: {
      const double d = x - eta;
      return d * d;
    }
    case RiskKind::CVaR:
      return eta + std::max(0.0, x - eta) / (1.0 - spec.p());
    case RiskKind::WMd:
      return std::max(spec.p() * (x - eta), (1.0 - spec.p()) * (eta - x));
    case RiskKind::OCE:
      return eta - spec.utility()(eta - x);
  }
  return 0.0;
}

RhoSubgradient rho_subgradient(const RiskSpec& spec, double x, double eta) {
  switch (spec.kind()) {
    case RiskKind::Variance: {
      const double d = 2.0 * (x - eta);
      return {d, -d};
    }
    case RiskKind::CVaR: {
      const double dx = x > eta ? 1.0 / (1.0 - spec.p()) : 0.0;
      return {dx, 1.0 - dx};
    }
    case RiskKind::WMd: {
      const double dx = x > eta ? spec.p() : -(1.0 - spec.p());
      return {dx, -dx};
    }
    case RiskKind::OCE: {
      const double du = spec.utility().slope_at(eta - x);
      return {du, 1.0 - du};
    }
  }
  return {};
}

double expected_rho(const RiskSpec& spec, const ScenarioSet& X, double eta) {
  double sum = 0.0;
  const auto v = X.values();
  const auto p = X.probs();
  for (std::size_t i = 0; i < v.size(); ++i) sum += p[i] * rho(spec, v[i], eta);
  return sum;
}

// --- evaluation -------------------------------------------------------------

namespace {

struct SortedAtoms {
  std::vector<double> values;
  std::vector<double> probs;
};

/// Ascending by value, ties by probability: a canonical order.
SortedAtoms canonical(const ScenarioSet& X) {
  std::vector<std::size_t> idx(X.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const auto v = X.values();
  const auto p = X.probs();
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return v[a] < v[b] || (v[a] == v[b] && p[a] < p[b]);
  });
  SortedAtoms out;
  out.values.reserve(idx.size());
  out.probs.reserve(idx.size());
  for (std::size_t i : idx) {
    out.values.push_back(v[i]);
    out.probs.push_back(p[i]);
  }
  return out;
}

double sorted_left_quantile(const SortedAtoms& s, double p) {
  double cum = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    cum += s.probs[i];
    if (cum >= p) return s.values[i];
  }
  return s.values.back();
}

}  // namespace

RiskEvaluation evaluate_risk(const RiskSpec& spec, const ScenarioSet& X, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const SortedAtoms s = canonical(X);
  const double lo = s.values.front();
  const double hi = s.values.back();
  const double range = hi - lo + 1.0;
  const double width_tol = tol * (1.0 + std::abs(lo) + std::abs(hi));

  auto objective = [&](double eta) {
    double sum = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) sum += s.probs[i] * rho(spec, s.values[i], eta);
    return sum;
  };
  const Minimum1D m = minimize_convex(objective, lo - range, hi + range, width_tol);
  RiskEvaluation out{m.value, m.argmin, {m.lo, m.hi}, m.iterations};

  // Comparing values pins eta only to about sqrt(machine epsilon) on smooth
  // objectives such as the variance, so eta is refined by bisection on the
  // sign of the expected eta-subgradient inside the final bracket.
  auto slope = [&](double eta) {
    double g = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      g += s.probs[i] * rho_subgradient(spec, s.values[i], eta).deta;
    }
    return g;
  };
  double a = m.lo;
  double b = m.hi;
  if (slope(a) <= 0.0 && slope(b) >= 0.0) {
    while (b - a > width_tol) {
      const double mid = 0.5 * (a + b);
      const double g = slope(mid);
      ++out.iterations;
      if (g == 0.0) {
        a = b = mid;
      } else {
        (g < 0.0 ? a : b) = mid;
      }
    }
    out.eta_star = 0.5 * (a + b);
    out.value = std::min(m.value, objective(out.eta_star));
  }
  return out;
}

RiskEvaluation closed_form_risk(const RiskSpec& spec, const ScenarioSet& X) {
  const SortedAtoms s = canonical(X);
  const std::size_t n = s.values.size();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += s.probs[i] * s.values[i];

  RiskEvaluation out;
  out.bracket = {s.values.front(), s.values.back()};
  switch (spec.kind()) {
    case RiskKind::Variance: {
      double var = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = s.values[i] - mean;
        var += s.probs[i] * d * d;
      }
      out.value = var;
      out.eta_star = mean;
      out.bracket = {std::min(out.bracket.first, mean), std::max(out.bracket.second, mean)};
      break;
    }
    case RiskKind::CVaR: {
      const double var_p = sorted_left_quantile(s, spec.p());
      double excess = 0.0;
      for (std::size_t i = 0; i < n; ++i) excess += s.probs[i] * std::max(0.0, s.values[i] - var_p);
      out.value = var_p + excess / (1.0 - spec.p());
      out.eta_star = var_p;
      break;
    }
    case RiskKind::WMd: {
      const double p = spec.p();
      // integral over [0, p] of the left-continuous quantile function
      double integral = 0.0;
      double cum = 0.0;
      for (std::size_t i = 0; i < n && cum < p; ++i) {
        integral += s.values[i] * std::min(s.probs[i], p - cum);
        cum += s.probs[i];
      }
      out.value = mean * p - integral;
      out.eta_star = sorted_left_quantile(s, p);
      break;
    }
    case RiskKind::OCE:
      throw std::invalid_argument("no closed form for the optimized certainty equivalent");
  }
  return out;
}

RiskEvaluation risk_of(const RiskSpec& spec, const ScenarioSet& X, double tol) {
  return spec.has_closed_form() ? closed_form_risk(spec, X) : evaluate_risk(spec, X, tol);
}

double safety_measure(const RiskSpec& spec, const ScenarioSet& X, double tol) {
  return -evaluate_risk(spec, affine(X, -1.0, 0.0), tol).value;
}

double left_quantile(const ScenarioSet& X, double p) {
  return sorted_left_quantile(canonical(X), p);
}

}  // namespace riskdual
