#include "vclda/bspline.hpp"

#include <algorithm>
#include <cmath>

#include "vclda/errors.hpp"

namespace vclda {

SplineBasis::SplineBasis(int degree, int num_basis)
    : degree_(degree), num_basis_(num_basis) {
  if (degree < 0) throw DimensionError("spline degree must be nonnegative");
  if (num_basis < degree + 1) {
    throw DimensionError("num_basis must be at least degree + 1, got " +
                         std::to_string(num_basis) + " for degree " +
                         std::to_string(degree));
  }
  scale_ = std::sqrt(static_cast<double>(num_basis));

  // Clamped knot vector: degree+1 copies of each endpoint, interior knots
  // equally spaced.  Total count = num_basis + degree + 1.
  const int n_spans = num_basis - degree;
  knots_.assign(num_basis + degree + 1, 0.0);
  for (int i = 1; i < n_spans; ++i) {
    knots_[degree + i] = static_cast<double>(i) / n_spans;
  }
  for (int i = num_basis; i <= num_basis + degree; ++i) knots_[i] = 1.0;
}

int SplineBasis::find_span(double u) const {
  // Spans are half-open except the last, which is closed so u = 1 belongs
  // to it and the partition of unity holds on all of [0,1].  Searching the
  // stored knots keeps knots_[span] <= u <= knots_[span+1] exactly, which
  // the recursion needs for nonnegative values.
  if (u >= 1.0) return num_basis_ - 1;
  int lo = degree_;
  int hi = num_basis_ - 1;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (knots_[mid] <= u) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

void SplineBasis::basis_funs(int span, double u, double* vals) const {
  // Cox-de Boor recursion specialized to the nonzero window
  // [span-degree, span] (de Boor / Piegl-Tiller "BasisFuns").
  std::vector<double> left(degree_ + 1), right(degree_ + 1);
  vals[0] = 1.0;
  for (int j = 1; j <= degree_; ++j) {
    left[j] = u - knots_[span + 1 - j];
    right[j] = knots_[span + j] - u;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double tmp = vals[r] / (right[r + 1] + left[j - r]);
      vals[r] = saved + right[r + 1] * tmp;
      saved = left[j - r] * tmp;
    }
    vals[j] = saved;
  }
}

Eigen::VectorXd SplineBasis::eval_unscaled(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  const int span = find_span(u);
  std::vector<double> local(degree_ + 1);
  basis_funs(span, u, local.data());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(num_basis_);
  for (int r = 0; r <= degree_; ++r) out[span - degree_ + r] = local[r];
  return out;
}

Eigen::VectorXd SplineBasis::eval_scaled(double u) const {
  Eigen::VectorXd out = eval_unscaled(u);
  out *= scale_;
  return out;
}

int SplineBasis::eval_scaled_local(double u, double* vals) const {
  u = std::clamp(u, 0.0, 1.0);
  const int span = find_span(u);
  basis_funs(span, u, vals);
  for (int r = 0; r <= degree_; ++r) vals[r] *= scale_;
  return span - degree_;
}

}  // namespace vclda
