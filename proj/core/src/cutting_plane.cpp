#include "riskdual/cutting_plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace riskdual {

namespace {

/// Applies the cut g.(z - c) <= -beta to E = {c + B u : |u| <= 1}.
/// Returns false when the cut leaves nothing (alpha >= 1) or g is null in E.
bool apply_cut(Eigen::VectorXd& c, Eigen::MatrixXd& B, const Eigen::VectorXd& g, double beta) {
  const Eigen::Index k = c.size();
  const Eigen::VectorXd q = B.transpose() * g;
  const double nq = q.norm();
  if (!(nq > 0.0) || !std::isfinite(nq)) return false;
  const double alpha = std::max(0.0, beta) / nq;
  if (alpha >= 1.0) return false;
  const Eigen::VectorXd gh = q / nq;
  const Eigen::VectorXd Bg = B * gh;

  if (k == 1) {
    c -= 0.5 * (1.0 + alpha) * Bg;
    B *= 0.5 * (1.0 - alpha);
    return true;
  }
  const double kd = static_cast<double>(k);
  c -= ((1.0 + kd * alpha) / (kd + 1.0)) * Bg;
  const double scale = std::sqrt(kd * kd * (1.0 - alpha * alpha) / (kd * kd - 1.0));
  const double shrink =
      1.0 - std::sqrt((kd - 1.0) * (1.0 - alpha) / ((kd + 1.0) * (1.0 + alpha)));
  B = scale * (B - shrink * Bg * gh.transpose());
  return true;
}

}  // namespace

CuttingPlaneResult maximize_concave(const CuttingPlaneOracle& oracle, const Eigen::MatrixXd& G,
                                    const Eigen::VectorXd& h, const Eigen::VectorXd& center,
                                    const Eigen::VectorXd& half_widths,
                                    const CuttingPlaneOptions& options) {
  const Eigen::Index k = center.size();
  if (half_widths.size() != k || G.cols() != k || G.rows() != h.size()) {
    throw std::invalid_argument("cutting-plane dimensions disagree");
  }

  CuttingPlaneResult out;
  out.value = -std::numeric_limits<double>::infinity();
  out.upper_bound = std::numeric_limits<double>::infinity();
  out.point = center;

  if (k == 0) {
    const OracleAnswer ans = oracle(center);
    out.iterations = 1;
    if (ans.feasible) {
      out.found_feasible = true;
      out.converged = true;
      out.value = ans.value;
      out.upper_bound = ans.value;
    }
    return out;
  }

  Eigen::VectorXd c = center;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(k, k);
  const double radius_scale = std::sqrt(static_cast<double>(k));
  for (Eigen::Index i = 0; i < k; ++i) {
    // A zero width would make E flat; pad it so the cut updates stay defined.
    B(i, i) = radius_scale * std::max(half_widths[i], 1e-12);
  }

  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    out.iterations = it + 1;

    Eigen::Index worst = -1;
    double worst_excess = 0.0;
    for (Eigen::Index r = 0; r < G.rows(); ++r) {
      const double excess = G.row(r).dot(c) - h[r];
      if (excess > worst_excess) {
        worst_excess = excess;
        worst = r;
      }
    }
    if (worst >= 0) {
      if (!apply_cut(c, B, G.row(worst).transpose(), worst_excess)) break;
      continue;
    }

    const OracleAnswer ans = oracle(c);
    if (!ans.feasible) {
      if (!apply_cut(c, B, ans.direction, ans.depth)) break;
      continue;
    }

    if (!out.found_feasible || ans.value > out.value) {
      out.value = ans.value;
      out.point = c;
      out.found_feasible = true;
    }
    const double reach = (B.transpose() * ans.direction).norm();
    out.upper_bound = std::min(out.upper_bound, ans.value + reach);
    if (out.upper_bound - out.value <= options.rel_tol * (1.0 + std::abs(out.value))) {
      out.converged = true;
      break;
    }
    // Keep only points at least as good as the incumbent.
    if (!apply_cut(c, B, -ans.direction, out.value - ans.value)) {
      out.upper_bound = out.value;
      out.converged = true;
      break;
    }
  }
  out.upper_bound = std::max(out.upper_bound, out.value);
  return out;
}

}  // namespace riskdual
