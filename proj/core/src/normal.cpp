#include "riskdual/normal.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace riskdual {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;

// Acklam's coefficients.
constexpr std::array<double, 6> kA = {-3.969683028665376e+01, 2.209460984245205e+02,
                                      -2.759285104469687e+02, 1.383577518672690e+02,
                                      -3.066479806614716e+01, 2.506628277459239e+00};
constexpr std::array<double, 5> kB = {-5.447609879822406e+01, 1.615858368580409e+02,
                                      -1.556989798598866e+02, 6.680131188771972e+01,
                                      -1.328068155288572e+01};
constexpr std::array<double, 6> kC = {-7.784894002430293e-03, -3.223964580411365e-01,
                                      -2.400758277161838e+00, -2.549732539343734e+00,
                                      4.374664141464968e+00,  2.938163982698783e+00};
constexpr std::array<double, 4> kD = {7.784695709041462e-03, 3.224671290700398e-01,
                                      2.445134137142996e+00, 3.754408661907416e+00};
constexpr double kLowBreak = 0.02425;

double tail_rational(double t) {
  const double num = ((((kC[0] * t + kC[1]) * t + kC[2]) * t + kC[3]) * t + kC[4]) * t + kC[5];
  const double den = (((kD[0] * t + kD[1]) * t + kD[2]) * t + kD[3]) * t + 1.0;
  return num / den;
}

double acklam(double q) {
  if (q < kLowBreak) {
    return tail_rational(std::sqrt(-2.0 * std::log(q)));
  }
  if (q > 1.0 - kLowBreak) {
    return -tail_rational(std::sqrt(-2.0 * std::log1p(-q)));
  }
  const double r = q - 0.5;
  const double s = r * r;
  const double num = (((((kA[0] * s + kA[1]) * s + kA[2]) * s + kA[3]) * s + kA[4]) * s + kA[5]) * r;
  const double den = ((((kB[0] * s + kB[1]) * s + kB[2]) * s + kB[3]) * s + kB[4]) * s + 1.0;
  return num / den;
}

void require_open_unit(double q, const char* name) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in (0, 1), got " +
                                std::to_string(q));
  }
}

}  // namespace

double normal_pdf(double x) noexcept { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) noexcept { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_quantile(double q) {
  require_open_unit(q, "quantile level");
  const double x = acklam(q);
  // 1 - q is exact for q >= 0.5, so the upper-tail residual loses nothing.
  const double residual = q < 0.5 ? normal_cdf(x) - q : (1.0 - q) - normal_sf(x);
  const double density = normal_pdf(x);
  if (density <= 0.0) {
    return x;
  }
  return x - residual / density;
}

double normal_cvar_coeff(double p) {
  require_open_unit(p, "confidence level p");
  return normal_pdf(normal_quantile(p)) / (1.0 - p);
}

}  // namespace riskdual
