#include "vclda/solver.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

#include "vclda/errors.hpp"

namespace vclda {

namespace {

double group_norm_sum(const GammaCoefficients& gamma) {
  double s = 0.0;
  for (int j = 0; j < gamma.p; ++j) s += gamma.group(j).norm();
  return s;
}

double smooth_value(const Eigen::VectorXd& g, const DesignSystem& sys) {
  return 0.5 * g.dot(sys.dn * g) - sys.bn.dot(g);
}

}  // namespace

GammaCoefficients solve_closed_form(const DesignSystem& sys) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(sys.dn);
  if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-12) {
    throw SingularError(
        "design system is numerically singular; reduce the dimension or the "
        "basis size");
  }
  GammaCoefficients gamma{ldlt.solve(sys.bn), sys.p, sys.ln};
  // One refinement step keeps the relative residual at solver tolerance.
  gamma.values += ldlt.solve(sys.bn - sys.dn * gamma.values);
  return gamma;
}

double objective(const GammaCoefficients& gamma, const DesignSystem& sys,
                 double lambda) {
  return smooth_value(gamma.values, sys) + lambda * group_norm_sum(gamma);
}

Eigen::VectorXd smooth_gradient(const GammaCoefficients& gamma,
                                const DesignSystem& sys) {
  return sys.dn * gamma.values - sys.bn;
}

Eigen::VectorXd group_soft_threshold(const Eigen::VectorXd& v, double t) {
  const double norm = v.norm();
  if (norm <= t || norm == 0.0) return Eigen::VectorXd::Zero(v.size());
  return v * ((norm - t) / norm);
}

double lambda_max(const DesignSystem& sys) {
  double m = 0.0;
  for (int j = 0; j < sys.p; ++j) {
    m = std::max(m, sys.bn.segment(static_cast<Eigen::Index>(j) * sys.ln, sys.ln).norm());
  }
  return m;
}

namespace {

double kkt_from_gradient(const GammaCoefficients& gamma,
                         const Eigen::VectorXd& grad, double lambda) {
  double worst = 0.0;
  for (int j = 0; j < gamma.p; ++j) {
    const auto gj =
        grad.segment(static_cast<Eigen::Index>(j) * gamma.ln, gamma.ln);
    const auto xj = gamma.group(j);
    const double xn = xj.norm();
    if (xn > 0.0) {
      worst = std::max(worst, (gj + (lambda / xn) * xj).norm());
    } else {
      worst = std::max(worst, std::max(0.0, gj.norm() - lambda));
    }
  }
  return worst;
}

}  // namespace

double kkt_residual(const GammaCoefficients& gamma, const DesignSystem& sys,
                    double lambda) {
  return kkt_from_gradient(gamma, smooth_gradient(gamma, sys), lambda);
}

IstaResult ista_solve(const DesignSystem& sys, double lambda,
                      const IstaOptions& opts,
                      const GammaCoefficients* warm_start) {
  if (lambda < 0.0) throw DimensionError("lambda must be nonnegative");
  const Eigen::Index dim = sys.bn.size();

  GammaCoefficients gamma{Eigen::VectorXd::Zero(dim), sys.p, sys.ln};
  if (warm_start != nullptr) {
    if (warm_start->values.size() != dim) {
      throw DimensionError("warm start has the wrong dimension");
    }
    gamma.values = warm_start->values;
  }

  const double kkt_scale = std::max(1.0, lambda_max(sys));
  double eta = opts.initial_step;
  double f_smooth = smooth_value(gamma.values, sys);
  double f_total = f_smooth + lambda * group_norm_sum(gamma);

  IstaResult out;
  Eigen::VectorXd grad(dim), step(dim), candidate(dim), diff(dim);
  for (int t = 0; t < opts.max_iters; ++t) {
    grad.noalias() = sys.dn * gamma.values;
    grad -= sys.bn;

    // The gradient at the current point doubles as the KKT certificate of
    // the previous accepted iterate (and of a warm start at t = 0).
    if (kkt_from_gradient(gamma, grad, lambda) <= opts.kkt_tol * kkt_scale) {
      out.converged = true;
      break;
    }

    // Backtrack until the quadratic upper-bound condition holds; eta is
    // never increased again, so for the quadratic objective the search
    // terminates once eta <= 1/||dn||.
    double f_new = 0.0;
    while (true) {
      step = gamma.values - eta * grad;
      for (int j = 0; j < sys.p; ++j) {
        candidate.segment(static_cast<Eigen::Index>(j) * sys.ln, sys.ln) =
            group_soft_threshold(
                step.segment(static_cast<Eigen::Index>(j) * sys.ln, sys.ln),
                eta * lambda);
      }
      f_new = smooth_value(candidate, sys);
      diff = candidate - gamma.values;
      const double bound =
          f_smooth + diff.dot(grad) + diff.squaredNorm() / (2.0 * eta);
      if (f_new <= bound + 1e-15 * std::abs(bound)) break;
      eta *= opts.shrink_rate;
    }

    gamma.values.swap(candidate);
    f_smooth = f_new;
    const double f_prev = f_total;
    f_total = f_smooth + lambda * group_norm_sum(gamma);
    out.iterations = t + 1;

    const double rel_change =
        std::abs(f_prev - f_total) / std::max(1.0, std::abs(f_prev));
    if (rel_change < opts.rel_tol) {
      out.converged = true;
      break;
    }
  }

  out.gamma = std::move(gamma);
  out.objective = f_total;
  return out;
}

std::vector<int> support(const GammaCoefficients& gamma, double tol) {
  std::vector<int> s;
  for (int j = 0; j < gamma.p; ++j) {
    if (gamma.group(j).norm() > tol) s.push_back(j);
  }
  return s;
}

}  // namespace vclda
