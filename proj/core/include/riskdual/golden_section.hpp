#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "riskdual/errors.hpp"

namespace riskdual {

struct Minimum1D {
  double argmin = 0.0;
  double value = 0.0;
  double lo = 0.0;  ///< search interval actually used
  double hi = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/**
 * Golden-section search for a convex function on [lo, hi].
 *
 * Stops when the bracket is at most `width_tol` wide or after `max_iter`
 * reductions. The returned point is the best probe seen, so `value` never
 * exceeds f at any evaluated point. lo and hi themselves are probed.
 */
template <class F>
Minimum1D golden_section_minimize(F&& f, double lo, double hi, double width_tol,
                                  std::size_t max_iter = 400) {
  constexpr double kInvPhi = 0.6180339887498948482;
  Minimum1D out;
  out.lo = lo;
  out.hi = hi;

  auto consider = [&out](double x, double fx) {
    if (fx < out.value || (fx == out.value && x < out.argmin)) {
      out.argmin = x;
      out.value = fx;
    }
  };
  out.argmin = lo;
  out.value = f(lo);
  consider(hi, f(hi));

  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  consider(c, fc);
  consider(d, fd);

  std::size_t it = 0;
  while (b - a > width_tol && it < max_iter) {
    ++it;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  out.iterations = it;
  out.converged = b - a <= width_tol;
  return out;
}

/**
 * Minimizes a convex function over the whole real line.
 *
 * Keeps a triple lo < mid < hi and, while an end is strictly lower than
 * mid, steps toward it: the far end moves in to mid, mid moves to the low
 * end, and the new end goes twice as far out as the last step. By
 * convexity the minimum then lies outside the abandoned side. Stops once
 * f(mid) <= f(lo) and f(mid) <= f(hi), at most `max_expansions` steps;
 * otherwise throws BracketError, which means f keeps decreasing in some
 * direction. Flat tails (an unbounded set of minimizers) are fine.
 */
template <class F>
Minimum1D minimize_convex(F&& f, double lo, double hi, double width_tol,
                          std::size_t max_expansions = 60, std::size_t max_iter = 400) {
  double mid = 0.5 * (lo + hi);
  double flo = f(lo);
  double fmid = f(mid);
  double fhi = f(hi);
  std::size_t expansions = 0;
  while (flo < fmid || fhi < fmid) {
    if (expansions == max_expansions) {
      throw BracketError("no minimizer found in [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "] after " + std::to_string(max_expansions) +
                         " bracket expansions");
    }
    ++expansions;
    if (flo < fmid) {
      hi = mid;
      fhi = fmid;
      mid = lo;
      fmid = flo;
      lo = mid - 2.0 * (hi - mid);
      flo = f(lo);
    } else {
      lo = mid;
      flo = fmid;
      mid = hi;
      fmid = fhi;
      hi = mid + 2.0 * (mid - lo);
      fhi = f(hi);
    }
    if (!std::isfinite(flo) || !std::isfinite(fhi)) {
      throw BracketError("objective became non-finite while expanding the bracket");
    }
  }
  Minimum1D out = golden_section_minimize(std::forward<F>(f), lo, hi, width_tol, max_iter);
  if (fmid < out.value) {
    out.value = fmid;
    out.argmin = mid;
  }
  out.iterations += expansions;
  return out;
}

}  // namespace riskdual
