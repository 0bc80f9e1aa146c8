#include "vclda/classify.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <fstream>

#include "vclda/design.hpp"
#include "vclda/errors.hpp"

namespace vclda {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double bayes_risk(double delta) {
  if (delta < 0.0) throw DimensionError("delta must be nonnegative");
  return normal_cdf(-delta / 2.0);
}

ClassifierModel::ClassifierModel(MeanModel mean_model, GammaCoefficients gamma,
                                 PriorMode mode)
    : mean_model_(std::move(mean_model)),
      gamma_(std::move(gamma)),
      mode_(mode) {
  if (gamma_.p != mean_model_.feature_count() ||
      gamma_.ln != mean_model_.basis().num_basis() ||
      gamma_.values.size() !=
          static_cast<Eigen::Index>(gamma_.p) * gamma_.ln) {
    throw DimensionError("gamma dimensions do not match the mean model");
  }
}

Eigen::VectorXd ClassifierModel::eval_direction(double u) const {
  const Eigen::VectorXd b = basis().eval_scaled(u);
  Eigen::VectorXd theta(gamma_.p);
  for (int j = 0; j < gamma_.p; ++j) theta[j] = gamma_.group(j).dot(b);
  return theta;
}

double ClassifierModel::score(const Eigen::VectorXd& x, double u) const {
  if (x.size() != feature_count()) {
    throw DimensionError("observation has the wrong feature count");
  }
  return (x - mean_model_.pooled_mean(u, mode_)).dot(eval_direction(u));
}

int ClassifierModel::predict(const Eigen::VectorXd& x, double u) const {
  const double raw = score(x, u);
  if (mode_ == PriorMode::kEqual) {
    return raw >= 0.0 ? 1 : 0;
  }
  const double pi1 = mean_model_.prior_class1();
  const double pi2 = mean_model_.prior_class0();
  const Eigen::VectorXd gap =
      mean_model_.class_mean(u, 1) - mean_model_.class_mean(u, 0);
  const double denom = pi1 * pi2 * (1.0 - gap.dot(eval_direction(u)));
  if (denom <= 1e-10) {
    throw DegenerateScaleError(
        "plug-in scale denominator is not positive; the fitted direction is "
        "unusable for the unequal-prior rule");
  }
  return raw / denom + std::log(pi1 / pi2) >= 0.0 ? 1 : 0;
}

Eigen::VectorXi ClassifierModel::predict_batch(const Eigen::MatrixXd& X,
                                               const Eigen::VectorXd& U) const {
  if (X.rows() != U.size()) {
    throw DimensionError("X and U must have matching sample counts");
  }
  Eigen::VectorXi labels(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    labels[i] = predict(X.row(i).transpose(), U[i]);
  }
  return labels;
}

double ClassifierModel::empirical_risk(const Eigen::MatrixXd& X,
                                       const Eigen::VectorXd& U,
                                       const Eigen::VectorXi& Y) const {
  if (X.rows() == 0) throw DimensionError("empty test set");
  const Eigen::VectorXi pred = predict_batch(X, U);
  Eigen::Index wrong = 0;
  for (Eigen::Index i = 0; i < Y.size(); ++i) wrong += pred[i] != Y[i];
  return static_cast<double>(wrong) / static_cast<double>(Y.size());
}

double conditional_risk(const ClassifierModel& model,
                        const ScenarioOracle& truth, double u) {
  const Eigen::VectorXd theta = model.eval_direction(u);
  const Eigen::MatrixXd sigma = truth.covariance(u);
  const double s2 = theta.dot(sigma * theta);
  if (s2 <= 1e-14) {
    throw ZeroDirectionError("fitted direction is numerically zero at u=" +
                             std::to_string(u));
  }
  const double s = std::sqrt(s2);
  const Eigen::VectorXd mu_hat =
      model.mean_model().pooled_mean(u, PriorMode::kEqual);
  const double a = (mu_hat - truth.mean1(u)).dot(theta) / s;
  const double b = (mu_hat - truth.mean2(u)).dot(theta) / s;
  return 0.5 * normal_cdf(a) + 0.5 * (1.0 - normal_cdf(b));
}

int oracle_predict(const Eigen::VectorXd& x, const Eigen::VectorXd& mu1,
                   const Eigen::VectorXd& mu2, const Eigen::MatrixXd& sigma) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(sigma);
  if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-12) {
    throw SingularError("covariance matrix is numerically singular");
  }
  const Eigen::VectorXd direction = ldlt.solve(mu1 - mu2);
  return (x - 0.5 * (mu1 + mu2)).dot(direction) >= 0.0 ? 1 : 0;
}

StaticLda::StaticLda(Eigen::VectorXd mean1, Eigen::VectorXd mean0,
                     Eigen::VectorXd direction)
    : mean1_(std::move(mean1)),
      mean0_(std::move(mean0)),
      direction_(std::move(direction)) {}

StaticLda StaticLda::fit(const Eigen::MatrixXd& X, const Eigen::VectorXi& Y) {
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (Y.size() != n) throw DimensionError("X and Y must have matching sizes");

  Eigen::VectorXd mean1 = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd mean0 = Eigen::VectorXd::Zero(p);
  Eigen::Index n1 = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (Y[i] == 1) {
      mean1 += X.row(i).transpose();
      ++n1;
    } else {
      mean0 += X.row(i).transpose();
    }
  }
  const Eigen::Index n0 = n - n1;
  if (n1 == 0 || n0 == 0) {
    throw SingularError("both classes must be present to fit static LDA");
  }
  mean1 /= static_cast<double>(n1);
  mean0 /= static_cast<double>(n0);

  Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd c =
        X.row(i).transpose() - (Y[i] == 1 ? mean1 : mean0);
    pooled.selfadjointView<Eigen::Lower>().rankUpdate(c);
  }
  if (n <= p + 1) {
    throw SingularError("need more samples than features for static LDA");
  }
  pooled /= static_cast<double>(n - 2);
  pooled.triangularView<Eigen::StrictlyUpper>() = pooled.transpose();

  Eigen::LDLT<Eigen::MatrixXd> ldlt(pooled);
  if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-12) {
    throw SingularError("pooled sample covariance is numerically singular");
  }
  return StaticLda(std::move(mean1), std::move(mean0),
                   ldlt.solve(mean1 - mean0));
}

int StaticLda::predict(const Eigen::VectorXd& x) const {
  if (x.size() != mean1_.size()) {
    throw DimensionError("observation has the wrong feature count");
  }
  return (x - 0.5 * (mean1_ + mean0_)).dot(direction_) >= 0.0 ? 1 : 0;
}

double StaticLda::empirical_risk(const Eigen::MatrixXd& X,
                                 const Eigen::VectorXi& Y) const {
  if (X.rows() == 0) throw DimensionError("empty test set");
  Eigen::Index wrong = 0;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    wrong += predict(X.row(i).transpose()) != Y[i];
  }
  return static_cast<double>(wrong) / static_cast<double>(X.rows());
}

ClassifierModel fit_vclda(const Eigen::MatrixXd& X, const Eigen::VectorXd& U,
                          const Eigen::VectorXi& Y, const FitOptions& opts,
                          FitInfo* info) {
  const SplineBasis basis(opts.degree, opts.num_basis);
  MeanModel mean_model = fit_mean_model(X, U, Y, basis);
  const Eigen::VectorXd z =
      pseudo_response(Y, opts.mode, mean_model.prior_class1());
  const DesignSystem sys = assemble(X, U, z, mean_model, opts.mode);
  GammaCoefficients gamma;
  if (opts.lambda == 0.0) {
    gamma = solve_closed_form(sys);
    if (info != nullptr) *info = FitInfo{};
  } else {
    IstaResult ista = ista_solve(sys, opts.lambda, opts.ista);
    if (info != nullptr) *info = FitInfo{ista.converged, ista.iterations};
    gamma = std::move(ista.gamma);
  }
  return ClassifierModel(std::move(mean_model), std::move(gamma), opts.mode);
}

}  // namespace vclda
