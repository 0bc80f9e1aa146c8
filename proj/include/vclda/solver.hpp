#pragma once

#include <Eigen/Core>
#include <vector>

#include "vclda/design.hpp"

namespace vclda {

// Stacked approximation coefficients gamma in R^{p*ln} with a per-feature
// group view: group j is values[j*ln .. (j+1)*ln).
struct GammaCoefficients {
  Eigen::VectorXd values;
  int p = 0;
  int ln = 0;

  auto group(int j) { return values.segment(static_cast<Eigen::Index>(j) * ln, ln); }
  auto group(int j) const {
    return values.segment(static_cast<Eigen::Index>(j) * ln, ln);
  }
};

struct IstaOptions {
  int max_iters = 10000;
  double rel_tol = 1e-8;      // stop on relative objective change below this
  double kkt_tol = 1e-6;      // or on a scaled group-KKT residual below this
  double shrink_rate = 0.5;   // backtracking shrink factor, in (0,1)
  double initial_step = 1.0;  // starting step size
};

struct IstaResult {
  GammaCoefficients gamma;
  int iterations = 0;
  double objective = 0.0;
  bool converged = false;
};

// Direct solve dn * gamma = bn; requires dn numerically nonsingular
// (condition estimate < 1e12), otherwise throws SingularError.
GammaCoefficients solve_closed_form(const DesignSystem& sys);

// (1/2) gamma^T dn gamma - bn^T gamma + lambda * sum_j ||gamma_(j)||_2.
double objective(const GammaCoefficients& gamma, const DesignSystem& sys,
                 double lambda);

// Gradient of the smooth part: dn * gamma - bn.
Eigen::VectorXd smooth_gradient(const GammaCoefficients& gamma,
                                const DesignSystem& sys);

// Block soft-thresholding: 0 when ||v|| <= t, otherwise v shrunk to norm
// ||v|| - t.  The proximal map of t*||.||_2.
Eigen::VectorXd group_soft_threshold(const Eigen::VectorXd& v, double t);

// Proximal gradient descent with backtracking line search on the group
// lasso objective.  The step size never increases across iterations and
// every accepted step satisfies the quadratic upper-bound condition, so
// the objective sequence is nonincreasing.  Non-convergence within
// max_iters is reported through the converged flag, not an exception.
IstaResult ista_solve(const DesignSystem& sys, double lambda,
                      const IstaOptions& opts = {},
                      const GammaCoefficients* warm_start = nullptr);

// Features whose coefficient group has Euclidean norm above tol.
std::vector<int> support(const GammaCoefficients& gamma, double tol);

// Smallest penalty for which the solution is exactly zero:
// max_j ||bn_(j)||_2.
double lambda_max(const DesignSystem& sys);

// Max over groups of the group-KKT violation at (gamma, lambda); zero at
// an exact minimizer.
double kkt_residual(const GammaCoefficients& gamma, const DesignSystem& sys,
                    double lambda);

}  // namespace vclda
