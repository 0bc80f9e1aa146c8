#include "vclda/meanfit.hpp"

#include <Eigen/Cholesky>

#include "vclda/errors.hpp"

namespace vclda {

MeanModel::MeanModel(SplineBasis basis, Eigen::MatrixXd coeffs_class1,
                     Eigen::MatrixXd coeffs_class0, double prior_class1)
    : basis_(std::move(basis)),
      coeffs_class1_(std::move(coeffs_class1)),
      coeffs_class0_(std::move(coeffs_class0)),
      prior_class1_(prior_class1) {
  if (coeffs_class1_.rows() != basis_.num_basis() ||
      coeffs_class0_.rows() != coeffs_class1_.rows() ||
      coeffs_class0_.cols() != coeffs_class1_.cols()) {
    throw DimensionError("mean coefficient matrices must both be L x p");
  }
  if (!(prior_class1_ > 0.0 && prior_class1_ < 1.0)) {
    throw DimensionError("prior_class1 must lie strictly in (0,1)");
  }
}

Eigen::VectorXd MeanModel::class_mean(double u, int label) const {
  const Eigen::VectorXd b = basis_.eval_scaled(u);
  return (label == 1 ? coeffs_class1_ : coeffs_class0_).transpose() * b;
}

Eigen::VectorXd MeanModel::pooled_mean(double u, PriorMode mode) const {
  const Eigen::VectorXd b = basis_.eval_scaled(u);
  if (mode == PriorMode::kEqual) {
    return 0.5 * (coeffs_class1_ + coeffs_class0_).transpose() * b;
  }
  return (prior_class1_ * coeffs_class1_ + prior_class0() * coeffs_class0_)
             .transpose() *
         b;
}

MeanModel fit_mean_model(const Eigen::MatrixXd& X, const Eigen::VectorXd& U,
                         const Eigen::VectorXi& Y, const SplineBasis& basis) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (U.size() != n || Y.size() != n) {
    throw DimensionError("X, U and Y must have matching sample counts");
  }
  const int L = basis.num_basis();

  Eigen::MatrixXd gram[2] = {Eigen::MatrixXd::Zero(L, L),
                             Eigen::MatrixXd::Zero(L, L)};
  Eigen::MatrixXd rhs[2] = {Eigen::MatrixXd::Zero(L, p),
                            Eigen::MatrixXd::Zero(L, p)};
  Eigen::Index count1 = 0;

  Eigen::VectorXd b(L);
  for (Eigen::Index i = 0; i < n; ++i) {
    b = basis.eval_scaled(U[i]);
    const int cls = Y[i] == 1 ? 1 : 0;
    gram[cls].selfadjointView<Eigen::Lower>().rankUpdate(b);
    rhs[cls].noalias() += b * X.row(i);
    count1 += cls;
  }
  if (count1 == 0 || count1 == n) {
    throw SingularError("both classes must be present to fit mean functions");
  }

  Eigen::MatrixXd coeffs[2];
  for (int cls : {0, 1}) {
    gram[cls].triangularView<Eigen::Upper>() =
        gram[cls].transpose().triangularView<Eigen::Upper>();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram[cls]);
    if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-12) {
      throw SingularError(
          "within-class Gram matrix is numerically singular; reduce the "
          "basis size or provide more samples per class");
    }
    coeffs[cls] = ldlt.solve(rhs[cls]);
  }

  const double prior1 = static_cast<double>(count1) / static_cast<double>(n);
  return MeanModel(basis, std::move(coeffs[1]), std::move(coeffs[0]), prior1);
}

}  // namespace vclda
