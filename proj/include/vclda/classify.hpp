#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>

#include "vclda/meanfit.hpp"
#include "vclda/simulate.hpp"
#include "vclda/solver.hpp"

namespace vclda {

// Standard normal CDF, accurate to ~1e-15 absolute.
double normal_cdf(double x);

// Optimal misclassification risk Phi(-delta/2) at separation delta.
double bayes_risk(double delta);

// The fitted varying-coefficient discriminant: direction function
// theta(u) = (gamma_(1)^T B(u), ..., gamma_(p)^T B(u)) plus the fitted
// means and priors.  Immutable; predict and the risk helpers are pure and
// thread-safe.
class ClassifierModel {
 public:
  ClassifierModel(MeanModel mean_model, GammaCoefficients gamma,
                  PriorMode mode);

  const SplineBasis& basis() const { return mean_model_.basis(); }
  const MeanModel& mean_model() const { return mean_model_; }
  const GammaCoefficients& gamma() const { return gamma_; }
  PriorMode mode() const { return mode_; }
  int feature_count() const { return gamma_.p; }

  // theta(u): entry j is the inner product of coefficient group j with the
  // scaled basis at u.
  Eigen::VectorXd eval_direction(double u) const;

  // Discriminant score whose sign decides the label in equal-prior mode.
  double score(const Eigen::VectorXd& x, double u) const;

  // Equal-prior: 1 iff (x - mu(u))^T theta(u) >= 0.  Estimated-prior:
  // 1 iff c(u) * (x - mu(u))^T theta(u) + log(pi1/pi2) >= 0 with the
  // plug-in scale c(u) = 1 / [pi1 pi2 (1 - (mu1(u)-mu2(u))^T theta(u))];
  // throws DegenerateScaleError when that denominator is not positive.
  int predict(const Eigen::VectorXd& x, double u) const;

  Eigen::VectorXi predict_batch(const Eigen::MatrixXd& X,
                                const Eigen::VectorXd& U) const;

  // Fraction of misclassified samples.
  double empirical_risk(const Eigen::MatrixXd& X, const Eigen::VectorXd& U,
                        const Eigen::VectorXi& Y) const;

  void save(std::ostream& os) const;
  void save(const std::string& path) const;
  static ClassifierModel load(std::istream& is);
  static ClassifierModel load(const std::string& path);

 private:
  MeanModel mean_model_;
  GammaCoefficients gamma_;
  PriorMode mode_;
};

// Conditional misclassification risk of the fitted rule at exposure u,
// evaluated against the true scenario parameters:
//   (1/2) Phi(a^T theta / s) + (1/2) (1 - Phi(b^T theta / s))
// with a = mu_hat - mu1, b = mu_hat - mu2, s = sqrt(theta^T Sigma theta).
// Throws ZeroDirectionError when theta^T Sigma theta <= 1e-14.
double conditional_risk(const ClassifierModel& model,
                        const ScenarioOracle& truth, double u);

// Oracle rule for arbitrary truth values: label 1 iff
// (x - (mu1+mu2)/2)^T Sigma^{-1}(mu1 - mu2) >= 0.  Throws SingularError
// for a numerically singular covariance.
int oracle_predict(const Eigen::VectorXd& x, const Eigen::VectorXd& mu1,
                   const Eigen::VectorXd& mu2, const Eigen::MatrixXd& sigma);

// Classical static LDA baseline: sample class means and pooled sample
// covariance, ignoring the exposure variable.
class StaticLda {
 public:
  // Throws SingularError when the pooled covariance is rank deficient
  // (e.g. N <= p).
  static StaticLda fit(const Eigen::MatrixXd& X, const Eigen::VectorXi& Y);

  int predict(const Eigen::VectorXd& x) const;
  double empirical_risk(const Eigen::MatrixXd& X,
                        const Eigen::VectorXi& Y) const;

  const Eigen::VectorXd& direction() const { return direction_; }

 private:
  StaticLda(Eigen::VectorXd mean1, Eigen::VectorXd mean0,
            Eigen::VectorXd direction);

  Eigen::VectorXd mean1_, mean0_, direction_;
};

// End-to-end fit: mean model, design system, then the closed-form solve
// (lambda = 0) or ISTA (lambda > 0).
struct FitOptions {
  int degree = 3;
  int num_basis = 6;
  double lambda = 0.0;
  PriorMode mode = PriorMode::kEqual;
  IstaOptions ista;
};

struct FitInfo {
  bool converged = true;  // closed-form solves always converge
  int iterations = 0;
};

ClassifierModel fit_vclda(const Eigen::MatrixXd& X, const Eigen::VectorXd& U,
                          const Eigen::VectorXi& Y, const FitOptions& opts,
                          FitInfo* info = nullptr);

}  // namespace vclda
