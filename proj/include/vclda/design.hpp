#pragma once

#include <Eigen/Core>

#include "vclda/meanfit.hpp"

namespace vclda {

// The quadratic system of the penalized least-squares problem, built from
// the per-sample Kronecker regressors Bt_i = (X_i - mu(U_i)) (x) B(U_i):
//   dn = (1/N) sum Bt_i Bt_i^T,   bn = (1/N) sum Bt_i Z_i.
// Coefficient group j (feature j) occupies entries [j*ln, (j+1)*ln).
struct DesignSystem {
  Eigen::MatrixXd dn;  // (p*ln) x (p*ln), symmetric PSD
  Eigen::VectorXd bn;  // p*ln
  int p = 0;
  int ln = 0;
  Eigen::Index n_samples = 0;
};

// Pseudo response: +1/2 / -1/2 for class 1 / 0 in equal-prior mode;
// +prior_class0 / -prior_class1 in estimated-prior mode.
Eigen::VectorXd pseudo_response(const Eigen::VectorXi& Y, PriorMode mode,
                                double prior_class1);

// Accumulates (dn, bn) sample by sample as rank-1 updates over the group
// blocks: block (j,k) receives (x_j - mu_j)(x_k - mu_k) * B B^T, using the
// local support of B so each sample touches only (degree+1)^2 entries per
// block.  The full N x (p*ln) design is never materialized.
DesignSystem assemble(const Eigen::MatrixXd& X, const Eigen::VectorXd& U,
                      const Eigen::VectorXd& Z, const MeanModel& mean_model,
                      PriorMode mode);

}  // namespace vclda
