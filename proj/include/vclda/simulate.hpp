#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace vclda {

// Synthetic scenario description: which direction/covariance family, the
// dimensions, and the RNG seed.  s is the number of active features
// (s = p in the low-dimensional settings).
struct ScenarioConfig {
  int n_per_class = 100;
  int p = 5;
  int s = 5;
  int direction_id = 1;   // 1: const, 2: u, 3: sin(4u), 4: exp(u)
  int covariance_id = 1;  // 1: 0.5^|i-j|, 2: u^|i-j|, 3: equicorrelation u
  int test_size = 200;
  std::uint64_t seed = 0;
};

struct Dataset {
  Eigen::MatrixXd X;  // N x p
  Eigen::VectorXd U;  // N, in [0,1]
  Eigen::VectorXi Y;  // N, {0,1}
  Eigen::Index size() const { return X.rows(); }
};

// Active entries follow the selected formula, entries s+1..p are zero.
Eigen::VectorXd direction_value(int direction_id, double u, int p, int s);

// Covariance family value; covariance 2 uses the convention 0^0 = 1 so it
// is the identity at u = 0.
Eigen::MatrixXd covariance_value(int covariance_id, double u, int p);

// Ground truth of a synthetic scenario: mu1(u) = 0, mu2(u) = Sigma(u) b(u)
// where b is the selected direction family.  The signed Bayes direction is
// beta*(u) = Sigma(u)^{-1}(mu1 - mu2)(u) = -b(u); the oracle stores it with
// this sign so the discriminant rule labels class 1 correctly.
class ScenarioOracle {
 public:
  ScenarioOracle(int direction_id, int covariance_id, int p, int s);

  int feature_count() const { return p_; }

  Eigen::VectorXd mean1(double u) const;
  Eigen::VectorXd mean2(double u) const;
  Eigen::MatrixXd covariance(double u) const;

  // Signed Bayes direction beta*(u); satisfies
  // covariance(u) * bayes_direction(u) = mean1(u) - mean2(u).
  Eigen::VectorXd bayes_direction(double u) const;

  // The population least-squares direction, proportional to beta*:
  // theta*(u) = beta*(u) / (4 + Delta(u)^2) under equal priors.
  Eigen::VectorXd theta_star(double u) const;

  // Mahalanobis separation Delta(u) = sqrt(b^T Sigma b).
  double delta(double u) const;

  // Oracle rule: label 1 iff (x - mu(u))^T beta*(u) >= 0 with the pooled
  // mean mu = (mu1 + mu2)/2.
  int predict(const Eigen::VectorXd& x, double u) const;

 private:
  int direction_id_;
  int covariance_id_;
  int p_;
  int s_;
};

struct GeneratedScenario {
  Dataset train;
  Dataset test;
  ScenarioOracle truth;
};

// Draws U ~ Uniform[0,1] per sample (u = 1 rejected, covariance 3 needs
// u < 1), assigns balanced classes, and samples X from the class-
// conditional Gaussian at U via a Cholesky factor of Sigma(U).  The same
// config (including seed) reproduces identical datasets on any platform.
GeneratedScenario generate(const ScenarioConfig& config);

}  // namespace vclda
