#include "riskdual/decision_set.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace riskdual {

Eigen::VectorXd project_onto_simplex(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  if (n == 0) return v;
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0;
  double tau = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cum += u[static_cast<std::size_t>(k)];
    const double t = (cum - 1.0) / static_cast<double>(k + 1);
    if (u[static_cast<std::size_t>(k)] - t > 0.0) tau = t;
  }
  return (v.array() - tau).max(0.0).matrix();
}

DecisionSet DecisionSet::simplex(std::size_t n) {
  if (n == 0) throw std::invalid_argument("simplex needs at least one asset");
  return DecisionSet(Type::Simplex, n, std::vector<double>(n, 0.0), std::vector<double>(n, 1.0));
}

DecisionSet DecisionSet::box(std::vector<double> lower, std::vector<double> upper) {
  if (lower.size() != upper.size()) {
    throw std::invalid_argument("box bounds differ in length");
  }
  if (lower.empty()) throw std::invalid_argument("box needs at least one asset");
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]) || lower[j] > upper[j]) {
      throw std::invalid_argument("box bounds must be finite with lower <= upper");
    }
  }
  const std::size_t n = lower.size();
  return DecisionSet(Type::Box, n, std::move(lower), std::move(upper));
}

bool DecisionSet::contains(const Eigen::VectorXd& a, double tol) const {
  if (static_cast<std::size_t>(a.size()) != n_) return false;
  for (std::size_t j = 0; j < n_; ++j) {
    const double x = a[static_cast<Eigen::Index>(j)];
    if (!std::isfinite(x) || x < lower_[j] - tol || x > upper_[j] + tol) return false;
  }
  if (type_ == Type::Simplex && std::abs(a.sum() - 1.0) > tol) return false;
  return true;
}

Eigen::VectorXd DecisionSet::project(const Eigen::VectorXd& a) const {
  if (type_ == Type::Simplex) return project_onto_simplex(a);
  Eigen::VectorXd out = a;
  for (std::size_t j = 0; j < n_; ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    out[i] = std::clamp(out[i], lower_[j], upper_[j]);
  }
  return out;
}

double DecisionSet::diameter() const {
  if (type_ == Type::Simplex) return n_ > 1 ? std::sqrt(2.0) : 0.0;
  double sq = 0.0;
  for (std::size_t j = 0; j < n_; ++j) sq += (upper_[j] - lower_[j]) * (upper_[j] - lower_[j]);
  return std::sqrt(sq);
}

Eigen::VectorXd DecisionSet::center() const {
  Eigen::VectorXd c(static_cast<Eigen::Index>(n_));
  for (std::size_t j = 0; j < n_; ++j) {
    c[static_cast<Eigen::Index>(j)] =
        type_ == Type::Simplex ? 1.0 / static_cast<double>(n_) : 0.5 * (lower_[j] + upper_[j]);
  }
  return c;
}

DecisionSet::Chart DecisionSet::chart() const {
  Chart c;
  const auto n = static_cast<Eigen::Index>(n_);
  if (type_ == Type::Simplex) {
    const Eigen::Index k = n - 1;
    c.offset = Eigen::VectorXd::Zero(n);
    c.offset[n - 1] = 1.0;
    c.basis = Eigen::MatrixXd::Zero(n, k);
    for (Eigen::Index j = 0; j < k; ++j) {
      c.basis(j, j) = 1.0;
      c.basis(n - 1, j) = -1.0;
    }
    // y >= 0 and sum(y) <= 1
    c.G = Eigen::MatrixXd::Zero(k + (k > 0 ? 1 : 0), k);
    c.h = Eigen::VectorXd::Zero(c.G.rows());
    for (Eigen::Index j = 0; j < k; ++j) c.G(j, j) = -1.0;
    if (k > 0) {
      c.G.row(k).setOnes();
      c.h[k] = 1.0;
    }
    c.y_lo = Eigen::VectorXd::Zero(k);
    c.y_hi = Eigen::VectorXd::Ones(k);
    return c;
  }

  std::vector<std::size_t> free;
  c.offset = Eigen::VectorXd::Zero(n);
  for (std::size_t j = 0; j < n_; ++j) {
    if (upper_[j] > lower_[j]) {
      free.push_back(j);
    } else {
      c.offset[static_cast<Eigen::Index>(j)] = lower_[j];
    }
  }
  const auto k = static_cast<Eigen::Index>(free.size());
  c.basis = Eigen::MatrixXd::Zero(n, k);
  c.G = Eigen::MatrixXd::Zero(2 * k, k);
  c.h = Eigen::VectorXd::Zero(2 * k);
  c.y_lo = Eigen::VectorXd::Zero(k);
  c.y_hi = Eigen::VectorXd::Zero(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const std::size_t j = free[static_cast<std::size_t>(i)];
    c.basis(static_cast<Eigen::Index>(j), i) = 1.0;
    c.G(2 * i, i) = -1.0;
    c.h[2 * i] = -lower_[j];
    c.G(2 * i + 1, i) = 1.0;
    c.h[2 * i + 1] = upper_[j];
    c.y_lo[i] = lower_[j];
    c.y_hi[i] = upper_[j];
  }
  return c;
}

}  // namespace riskdual
