#pragma once

#include <Eigen/Core>
#include <vector>

namespace vclda {

// Clamped B-spline basis on [0,1] with equally spaced interior knots.
//
// The scaled basis B(u) = sqrt(L) * B*(u) is what the rest of the library
// consumes: entries are nonnegative and sum to sqrt(L), where L is the
// basis dimension.  Evaluation uses the Cox-de Boor recursion; inputs
// outside [0,1] are clamped to the boundary.  Immutable after
// construction and safe to share across threads.
class SplineBasis {
 public:
  // Throws DimensionError unless num_basis >= degree + 1.
  SplineBasis(int degree, int num_basis);

  int degree() const { return degree_; }
  int num_basis() const { return num_basis_; }
  const std::vector<double>& knots() const { return knots_; }

  // Standard basis B*(u): entries in [0,1], summing to 1, at most
  // degree+1 of them nonzero.
  Eigen::VectorXd eval_unscaled(double u) const;

  // Scaled basis sqrt(L) * B*(u).
  Eigen::VectorXd eval_scaled(double u) const;

  // Writes the degree+1 nonzero scaled values into vals and returns the
  // index of the first nonzero basis function.  vals must have room for
  // degree+1 doubles.
  int eval_scaled_local(double u, double* vals) const;

 private:
  int find_span(double u) const;
  void basis_funs(int span, double u, double* vals) const;

  int degree_;
  int num_basis_;
  double scale_;  // sqrt(num_basis)
  std::vector<double> knots_;
};

}  // namespace vclda
