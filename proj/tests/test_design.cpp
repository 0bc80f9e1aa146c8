#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "vclda/design.hpp"
#include "vclda/errors.hpp"
#include "vclda/rng.hpp"

using namespace vclda;

namespace {

// Naive reference: materialize every Kronecker regressor and sum the
// outer products.  Independent of the block-accumulation path.
DesignSystem assemble_naive(const Eigen::MatrixXd& X, const Eigen::VectorXd& U,
                            const Eigen::VectorXd& Z,
                            const MeanModel& mean_model, PriorMode mode) {
  const int p = static_cast<int>(X.cols());
  const int L = mean_model.basis().num_basis();
  const Eigen::Index dim = static_cast<Eigen::Index>(p) * L;
  DesignSystem sys;
  sys.dn = Eigen::MatrixXd::Zero(dim, dim);
  sys.bn = Eigen::VectorXd::Zero(dim);
  sys.p = p;
  sys.ln = L;
  sys.n_samples = X.rows();
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const Eigen::VectorXd b = mean_model.basis().eval_scaled(U[i]);
    const Eigen::VectorXd v =
        X.row(i).transpose() - mean_model.pooled_mean(U[i], mode);
    Eigen::VectorXd bt(dim);
    for (int j = 0; j < p; ++j) bt.segment(j * L, L) = v[j] * b;
    sys.dn += bt * bt.transpose();
    sys.bn += bt * Z[i];
  }
  sys.dn /= static_cast<double>(X.rows());
  sys.bn /= static_cast<double>(X.rows());
  return sys;
}

MeanModel zero_mean_model(const SplineBasis& basis, int p) {
  const int L = basis.num_basis();
  return MeanModel(basis, Eigen::MatrixXd::Zero(L, p),
                   Eigen::MatrixXd::Zero(L, p), 0.5);
}

struct RandomInstance {
  Eigen::MatrixXd X;
  Eigen::VectorXd U, Z;
};

RandomInstance random_instance(int n, int p, Rng& rng) {
  RandomInstance d;
  d.X.resize(n, p);
  d.U.resize(n);
  d.Z.resize(n);
  for (int i = 0; i < n; ++i) {
    d.U[i] = rng.uniform();
    d.Z[i] = i % 2 == 0 ? 0.5 : -0.5;
    for (int j = 0; j < p; ++j) d.X(i, j) = rng.gaussian();
  }
  return d;
}

}  // namespace

TEST_CASE("pseudo response recoding") {
  Eigen::VectorXi y(2);
  y << 1, 0;

  const Eigen::VectorXd eq = pseudo_response(y, PriorMode::kEqual, 0.5);
  CHECK(eq[0] == 0.5);
  CHECK(eq[1] == -0.5);

  const Eigen::VectorXd est = pseudo_response(y, PriorMode::kEstimated, 0.75);
  CHECK(est[0] == doctest::Approx(0.25));
  CHECK(est[1] == doctest::Approx(-0.75));

  const Eigen::VectorXd est_half =
      pseudo_response(y, PriorMode::kEstimated, 0.5);
  CHECK(est_half[0] == eq[0]);
  CHECK(est_half[1] == eq[1]);
}

TEST_CASE("single-sample scalar system") {
  SplineBasis basis(0, 1);  // B(u) = 1
  const MeanModel m = zero_mean_model(basis, 1);
  Eigen::MatrixXd X(1, 1);
  X << 2.0;
  Eigen::VectorXd U(1), Z(1);
  U << 0.3;
  Z << 0.5;
  const DesignSystem sys = assemble(X, U, Z, m, PriorMode::kEqual);
  REQUIRE(sys.dn.rows() == 1);
  CHECK(sys.dn(0, 0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(sys.bn[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("block accumulation matches the naive oracle") {
  Rng rng(101);
  SplineBasis basis(2, 3);
  const MeanModel m = zero_mean_model(basis, 2);
  const RandomInstance d = random_instance(8, 2, rng);

  const DesignSystem fast = assemble(d.X, d.U, d.Z, m, PriorMode::kEqual);
  const DesignSystem naive =
      assemble_naive(d.X, d.U, d.Z, m, PriorMode::kEqual);
  CHECK((fast.dn - naive.dn).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((fast.bn - naive.bn).cwiseAbs().maxCoeff() <= 1e-10);

  // also with a nontrivial fitted mean model
  Eigen::VectorXi y(8);
  for (int i = 0; i < 8; ++i) y[i] = static_cast<int>(i % 2 == 0);
  SplineBasis cubic(1, 2);
  const MeanModel fitted = fit_mean_model(d.X, d.U, y, cubic);
  const DesignSystem f2 = assemble(d.X, d.U, d.Z, fitted, PriorMode::kEqual);
  const DesignSystem n2 =
      assemble_naive(d.X, d.U, d.Z, fitted, PriorMode::kEqual);
  CHECK((f2.dn - n2.dn).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((f2.bn - n2.bn).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("dn is symmetric positive semidefinite") {
  Rng rng(7);
  SplineBasis basis(3, 5);
  const MeanModel m = zero_mean_model(basis, 3);
  const RandomInstance d = random_instance(12, 3, rng);
  const DesignSystem sys = assemble(d.X, d.U, d.Z, m, PriorMode::kEqual);

  CHECK((sys.dn - sys.dn.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sys.dn);
  const double scale = sys.dn.norm();
  CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * scale);
}

TEST_CASE("duplicating the dataset leaves the system unchanged") {
  Rng rng(19);
  SplineBasis basis(2, 4);
  const MeanModel m = zero_mean_model(basis, 2);
  const RandomInstance d = random_instance(10, 2, rng);

  Eigen::MatrixXd X2(20, 2);
  Eigen::VectorXd U2(20), Z2(20);
  X2 << d.X, d.X;
  U2 << d.U, d.U;
  Z2 << d.Z, d.Z;

  const DesignSystem one = assemble(d.X, d.U, d.Z, m, PriorMode::kEqual);
  const DesignSystem two = assemble(X2, U2, Z2, m, PriorMode::kEqual);
  CHECK((one.dn - two.dn).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((one.bn - two.bn).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("dimension mismatches are rejected") {
  SplineBasis basis(1, 3);
  const MeanModel m = zero_mean_model(basis, 2);
  Eigen::MatrixXd X(4, 3);  // wrong p
  X.setZero();
  Eigen::VectorXd U = Eigen::VectorXd::Zero(4);
  Eigen::VectorXd Z = Eigen::VectorXd::Zero(4);
  CHECK_THROWS_AS(assemble(X, U, Z, m, PriorMode::kEqual), DimensionError);

  Eigen::MatrixXd Xok(4, 2);
  Xok.setZero();
  Eigen::VectorXd Ushort = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(assemble(Xok, Ushort, Z, m, PriorMode::kEqual),
                  DimensionError);
}
