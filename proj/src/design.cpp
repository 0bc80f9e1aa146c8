#include "vclda/design.hpp"

#include <vector>

#include "vclda/errors.hpp"

namespace vclda {

Eigen::VectorXd pseudo_response(const Eigen::VectorXi& Y, PriorMode mode,
                                double prior_class1) {
  const double z1 = mode == PriorMode::kEqual ? 0.5 : 1.0 - prior_class1;
  const double z0 = mode == PriorMode::kEqual ? -0.5 : -prior_class1;
  Eigen::VectorXd z(Y.size());
  for (Eigen::Index i = 0; i < Y.size(); ++i) z[i] = Y[i] == 1 ? z1 : z0;
  return z;
}

DesignSystem assemble(const Eigen::MatrixXd& X, const Eigen::VectorXd& U,
                      const Eigen::VectorXd& Z, const MeanModel& mean_model,
                      PriorMode mode) {
  const Eigen::Index n = X.rows();
  const int p = static_cast<int>(X.cols());
  if (U.size() != n || Z.size() != n) {
    throw DimensionError("X, U and Z must have matching sample counts");
  }
  if (p != mean_model.feature_count()) {
    throw DimensionError("feature count of X does not match the mean model");
  }
  const SplineBasis& basis = mean_model.basis();
  const int L = basis.num_basis();
  const int width = basis.degree() + 1;
  const Eigen::Index dim = static_cast<Eigen::Index>(p) * L;

  DesignSystem sys;
  sys.dn = Eigen::MatrixXd::Zero(dim, dim);
  sys.bn = Eigen::VectorXd::Zero(dim);
  sys.p = p;
  sys.ln = L;
  sys.n_samples = n;

  std::vector<double> bw(width);
  Eigen::MatrixXd w_outer(width, width);
  Eigen::VectorXd v(p);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int first = basis.eval_scaled_local(U[i], bw.data());
    v = X.row(i).transpose() - mean_model.pooled_mean(U[i], mode);
    for (int a = 0; a < width; ++a)
      for (int c = 0; c < width; ++c) w_outer(a, c) = bw[a] * bw[c];

    // Lower-triangular blocks only; mirrored once at the end.
    for (int j = 0; j < p; ++j) {
      const double vj = v[j];
      if (vj == 0.0) continue;
      for (int k = 0; k <= j; ++k) {
        sys.dn.block(j * L + first, k * L + first, width, width) +=
            (vj * v[k]) * w_outer;
      }
      for (int a = 0; a < width; ++a) {
        sys.bn[j * L + first + a] += vj * Z[i] * bw[a];
      }
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  sys.dn *= inv_n;
  sys.bn *= inv_n;
  sys.dn.triangularView<Eigen::StrictlyUpper>() = sys.dn.transpose();
  return sys;
}

}  // namespace vclda
