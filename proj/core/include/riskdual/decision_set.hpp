#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace riskdual {

/// Euclidean projection onto the probability simplex (sort-based, O(n log n)).
Eigen::VectorXd project_onto_simplex(const Eigen::VectorXd& v);

/// Compact convex set of admissible allocations: the unit simplex or a box.
class DecisionSet {
 public:
  enum class Type { Simplex, Box };

  static DecisionSet simplex(std::size_t n);
  /// Throws std::invalid_argument unless lower <= upper componentwise.
  static DecisionSet box(std::vector<double> lower, std::vector<double> upper);

  Type type() const noexcept { return type_; }
  std::size_t dimension() const noexcept { return n_; }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }

  bool contains(const Eigen::VectorXd& a, double tol = 1e-9) const;
  Eigen::VectorXd project(const Eigen::VectorXd& a) const;
  double diameter() const;

  /// A point of the set (the simplex barycenter or the box center).
  Eigen::VectorXd center() const;

  /**
   * Affine chart a = offset + basis * y of the set's affine hull, with
   * {y : G y <= h} the full-dimensional image of the set and [y_lo, y_hi]
   * a bounding box of it. Simplex drops the last coordinate; Box drops the
   * coordinates pinned by lower == upper. `basis` may have zero columns.
   */
  struct Chart {
    Eigen::VectorXd offset;
    Eigen::MatrixXd basis;
    Eigen::MatrixXd G;
    Eigen::VectorXd h;
    Eigen::VectorXd y_lo;
    Eigen::VectorXd y_hi;
  };
  Chart chart() const;

  friend bool operator==(const DecisionSet&, const DecisionSet&) = default;

 private:
  DecisionSet(Type type, std::size_t n, std::vector<double> lower, std::vector<double> upper)
      : type_(type), n_(n), lower_(std::move(lower)), upper_(std::move(upper)) {}

  Type type_;
  std::size_t n_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

}  // namespace riskdual
