#pragma once

#include <Eigen/Core>

#include "vclda/bspline.hpp"

namespace vclda {

// How the pooled mean (and the pseudo response) weight the two classes.
// Equal is the default; Estimated plugs in the empirical priors.
enum class PriorMode { kEqual, kEstimated };

// Per-class spline approximations of the mean functions.  Column j of a
// coefficient matrix holds the basis coefficients of feature j, so the
// class mean at exposure u is coeffs^T * B(u) with the scaled basis.
// Immutable and shareable across threads.
class MeanModel {
 public:
  MeanModel(SplineBasis basis, Eigen::MatrixXd coeffs_class1,
            Eigen::MatrixXd coeffs_class0, double prior_class1);

  const SplineBasis& basis() const { return basis_; }
  const Eigen::MatrixXd& coeffs_class1() const { return coeffs_class1_; }
  const Eigen::MatrixXd& coeffs_class0() const { return coeffs_class0_; }
  double prior_class1() const { return prior_class1_; }
  double prior_class0() const { return 1.0 - prior_class1_; }
  int feature_count() const { return static_cast<int>(coeffs_class1_.cols()); }

  // Fitted mean of the given class at exposure u.
  Eigen::VectorXd class_mean(double u, int label) const;

  // Pooled mean: unweighted average of the class means, or the
  // prior-weighted combination in estimated-prior mode.
  Eigen::VectorXd pooled_mean(double u, PriorMode mode) const;

 private:
  SplineBasis basis_;
  Eigen::MatrixXd coeffs_class1_;  // L x p
  Eigen::MatrixXd coeffs_class0_;  // L x p
  double prior_class1_;
};

// Least-squares fit of both class-mean functions: one Gram factorization
// per class, shared across all p features.  Y entries must be 0 or 1.
// Throws SingularError when a within-class Gram matrix is numerically
// singular (e.g. fewer than L samples in a class).
MeanModel fit_mean_model(const Eigen::MatrixXd& X, const Eigen::VectorXd& U,
                         const Eigen::VectorXi& Y, const SplineBasis& basis);

}  // namespace vclda
