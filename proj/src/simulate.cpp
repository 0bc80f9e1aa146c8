#include "vclda/simulate.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vclda/errors.hpp"
#include "vclda/rng.hpp"

namespace vclda {

Eigen::VectorXd direction_value(int direction_id, double u, int p, int s) {
  if (s < 1 || s > p) throw DimensionError("sparsity s must satisfy 1 <= s <= p");
  double value;
  switch (direction_id) {
    case 1: value = 1.0; break;
    case 2: value = u; break;
    case 3: value = std::sin(4.0 * u); break;
    case 4: value = std::exp(u); break;
    default:
      throw std::invalid_argument("unknown direction id " +
                                  std::to_string(direction_id));
  }
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  beta.head(s).setConstant(value);
  return beta;
}

Eigen::MatrixXd covariance_value(int covariance_id, double u, int p) {
  Eigen::MatrixXd sigma(p, p);
  switch (covariance_id) {
    case 1:
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) sigma(i, j) = std::pow(0.5, std::abs(i - j));
      break;
    case 2:
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
          sigma(i, j) = i == j ? 1.0 : std::pow(u, std::abs(i - j));
      break;
    case 3:
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) sigma(i, j) = i == j ? 1.0 : u;
      break;
    default:
      throw std::invalid_argument("unknown covariance id " +
                                  std::to_string(covariance_id));
  }
  return sigma;
}

ScenarioOracle::ScenarioOracle(int direction_id, int covariance_id, int p,
                               int s)
    : direction_id_(direction_id),
      covariance_id_(covariance_id),
      p_(p),
      s_(s) {
  // Validate the ids eagerly.
  direction_value(direction_id_, 0.5, p_, s_);
  covariance_value(covariance_id_, 0.5, p_);
}

Eigen::VectorXd ScenarioOracle::mean1(double) const {
  return Eigen::VectorXd::Zero(p_);
}

Eigen::VectorXd ScenarioOracle::mean2(double u) const {
  return covariance_value(covariance_id_, u, p_) *
         direction_value(direction_id_, u, p_, s_);
}

Eigen::MatrixXd ScenarioOracle::covariance(double u) const {
  return covariance_value(covariance_id_, u, p_);
}

Eigen::VectorXd ScenarioOracle::bayes_direction(double u) const {
  // mu1 - mu2 = -Sigma(u) b(u), so Sigma^{-1}(mu1 - mu2) = -b(u).
  return -direction_value(direction_id_, u, p_, s_);
}

double ScenarioOracle::delta(double u) const {
  const Eigen::VectorXd b = direction_value(direction_id_, u, p_, s_);
  const Eigen::MatrixXd sigma = covariance_value(covariance_id_, u, p_);
  return std::sqrt(b.dot(sigma * b));
}

Eigen::VectorXd ScenarioOracle::theta_star(double u) const {
  const double d = delta(u);
  return bayes_direction(u) / (4.0 + d * d);
}

int ScenarioOracle::predict(const Eigen::VectorXd& x, double u) const {
  const Eigen::VectorXd mu = 0.5 * (mean1(u) + mean2(u));
  return (x - mu).dot(bayes_direction(u)) >= 0.0 ? 1 : 0;
}

namespace {

void fill_split(Dataset& data, Eigen::Index n_class1, Eigen::Index n_total,
                const ScenarioOracle& truth, int covariance_id, int p,
                Rng& rng) {
  data.X.resize(n_total, p);
  data.U.resize(n_total);
  data.Y.resize(n_total);

  // Covariance 1 does not depend on u; factor it once.
  Eigen::LLT<Eigen::MatrixXd> cached;
  if (covariance_id == 1) {
    cached.compute(truth.covariance(0.0));
    if (cached.info() != Eigen::Success) {
      throw SingularError("covariance matrix is not positive definite");
    }
  }

  Eigen::VectorXd z(p);
  for (Eigen::Index i = 0; i < n_total; ++i) {
    double u = rng.uniform();
    while (u == 1.0) u = rng.uniform();  // unreachable with [0,1) draws
    const int label = i < n_class1 ? 1 : 0;

    for (int k = 0; k < p; ++k) z[k] = rng.gaussian();

    Eigen::VectorXd x;
    if (covariance_id == 1) {
      x = cached.matrixL() * z;
    } else {
      Eigen::LLT<Eigen::MatrixXd> llt(truth.covariance(u));
      if (llt.info() != Eigen::Success) {
        throw SingularError("covariance matrix is not positive definite at u=" +
                            std::to_string(u));
      }
      x = llt.matrixL() * z;
    }
    if (label == 1) {
      x += truth.mean1(u);
    } else {
      x += truth.mean2(u);
    }

    data.X.row(i) = x;
    data.U[i] = u;
    data.Y[i] = label;
  }
}

}  // namespace

GeneratedScenario generate(const ScenarioConfig& config) {
  if (config.n_per_class < 1) throw DimensionError("n_per_class must be >= 1");
  if (config.test_size < 2 || config.test_size % 2 != 0) {
    throw DimensionError("test_size must be even (balanced test classes)");
  }
  ScenarioOracle truth(config.direction_id, config.covariance_id, config.p,
                       config.s);

  Rng rng(config.seed);
  GeneratedScenario out{Dataset{}, Dataset{}, truth};
  fill_split(out.train, config.n_per_class, 2 * config.n_per_class, truth,
             config.covariance_id, config.p, rng);
  fill_split(out.test, config.test_size / 2, config.test_size, truth,
             config.covariance_id, config.p, rng);
  return out;
}

}  // namespace vclda
