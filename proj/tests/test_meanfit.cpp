#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "vclda/errors.hpp"
#include "vclda/meanfit.hpp"
#include "vclda/rng.hpp"

using namespace vclda;

namespace {

// Noiseless data whose class means are exact spline functions with known
// coefficients; the fit must recover the coefficients.
struct KnownCoeffData {
  Eigen::MatrixXd X;
  Eigen::VectorXd U;
  Eigen::VectorXi Y;
  Eigen::MatrixXd A1, A0;  // L x p
};

KnownCoeffData make_known(const SplineBasis& basis, int p, int n_per_class,
                          Rng& rng) {
  const int L = basis.num_basis();
  KnownCoeffData d;
  d.A1.resize(L, p);
  d.A0.resize(L, p);
  for (int r = 0; r < L; ++r) {
    for (int c = 0; c < p; ++c) {
      d.A1(r, c) = 2.0 * rng.uniform() - 1.0;
      d.A0(r, c) = 2.0 * rng.uniform() - 1.0;
    }
  }
  const int n = 2 * n_per_class;
  d.X.resize(n, p);
  d.U.resize(n);
  d.Y.resize(n);
  for (int i = 0; i < n; ++i) {
    d.U[i] = rng.uniform();
    d.Y[i] = i < n_per_class ? 1 : 0;
    const Eigen::VectorXd b = basis.eval_scaled(d.U[i]);
    d.X.row(i) = (d.Y[i] == 1 ? d.A1 : d.A0).transpose() * b;
  }
  return d;
}

}  // namespace

TEST_CASE("constant features are reproduced exactly") {
  Rng rng(3);
  SplineBasis basis(3, 6);
  const int n = 60;
  Eigen::MatrixXd X(n, 2);
  Eigen::VectorXd U(n);
  Eigen::VectorXi Y(n);
  for (int i = 0; i < n; ++i) {
    U[i] = rng.uniform();
    Y[i] = i % 2;
    X(i, 0) = 4.25;
    X(i, 1) = -1.5;
  }
  const MeanModel m = fit_mean_model(X, U, Y, basis);
  for (double u : {0.0, 0.123, 0.5, 0.987, 1.0}) {
    const Eigen::VectorXd mu1 = m.class_mean(u, 1);
    const Eigen::VectorXd mu0 = m.class_mean(u, 0);
    CHECK(mu1[0] == doctest::Approx(4.25).epsilon(1e-10));
    CHECK(mu1[1] == doctest::Approx(-1.5).epsilon(1e-10));
    CHECK(mu0[0] == doctest::Approx(4.25).epsilon(1e-10));
    const Eigen::VectorXd pooled = m.pooled_mean(u, PriorMode::kEqual);
    CHECK(pooled[1] == doctest::Approx(-1.5).epsilon(1e-10));
  }
}

TEST_CASE("noiseless spline data recovers the known coefficients") {
  Rng rng(17);
  SplineBasis basis(3, 5);
  const KnownCoeffData d = make_known(basis, 3, 40, rng);
  const MeanModel m = fit_mean_model(d.X, d.U, d.Y, basis);
  CHECK((m.coeffs_class1() - d.A1).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((m.coeffs_class0() - d.A0).cwiseAbs().maxCoeff() <= 1e-8);

  // eval_class_mean against the direct matrix-vector oracle
  for (int rep = 0; rep < 20; ++rep) {
    const double u = rng.uniform();
    const Eigen::VectorXd b = basis.eval_scaled(u);
    const Eigen::VectorXd oracle = d.A1.transpose() * b;
    const Eigen::VectorXd got = m.class_mean(u, 1);
    CHECK((got - oracle).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("class mean at u=0 is sqrt(L) times the first coefficient row") {
  Rng rng(23);
  SplineBasis basis(3, 7);
  const KnownCoeffData d = make_known(basis, 2, 30, rng);
  const MeanModel m = fit_mean_model(d.X, d.U, d.Y, basis);
  const Eigen::VectorXd at0 = m.class_mean(0.0, 1);
  const double scale = std::sqrt(7.0);
  for (int j = 0; j < 2; ++j) {
    CHECK(at0[j] ==
          doctest::Approx(scale * m.coeffs_class1()(0, j)).epsilon(1e-12));
  }
}

TEST_CASE("a class with fewer than L samples raises the singular error") {
  Rng rng(5);
  SplineBasis basis(3, 6);
  const int n = 20;
  Eigen::MatrixXd X(n, 2);
  Eigen::VectorXd U(n);
  Eigen::VectorXi Y(n);
  for (int i = 0; i < n; ++i) {
    U[i] = rng.uniform();
    Y[i] = i < 3 ? 1 : 0;  // class 1 has 3 < 6 samples
    X(i, 0) = rng.gaussian();
    X(i, 1) = rng.gaussian();
  }
  CHECK_THROWS_AS(fit_mean_model(X, U, Y, basis), SingularError);

  Y.setZero();  // single-class data
  CHECK_THROWS_AS(fit_mean_model(X, U, Y, basis), SingularError);
}

TEST_CASE("fit is invariant under sample permutation") {
  Rng rng(29);
  SplineBasis basis(2, 4);
  KnownCoeffData d = make_known(basis, 2, 25, rng);
  // add noise so the fit is not trivially exact
  for (int i = 0; i < d.X.rows(); ++i) {
    d.X(i, 0) += 0.3 * rng.gaussian();
    d.X(i, 1) += 0.3 * rng.gaussian();
  }
  const MeanModel m1 = fit_mean_model(d.X, d.U, d.Y, basis);

  std::vector<int> perm(static_cast<std::size_t>(d.X.rows()));
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::swap(perm[3], perm[17]);
  Eigen::MatrixXd Xp(d.X.rows(), d.X.cols());
  Eigen::VectorXd Up(d.U.size());
  Eigen::VectorXi Yp(d.Y.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    Xp.row(static_cast<int>(i)) = d.X.row(perm[i]);
    Up[static_cast<int>(i)] = d.U[perm[i]];
    Yp[static_cast<int>(i)] = d.Y[perm[i]];
  }
  const MeanModel m2 = fit_mean_model(Xp, Up, Yp, basis);
  CHECK((m1.coeffs_class1() - m2.coeffs_class1()).cwiseAbs().maxCoeff() <=
        1e-12);
  CHECK((m1.coeffs_class0() - m2.coeffs_class0()).cwiseAbs().maxCoeff() <=
        1e-12);
}

TEST_CASE("normal equations: within-class residuals are B-orthogonal") {
  Rng rng(31);
  SplineBasis basis(3, 6);
  KnownCoeffData d = make_known(basis, 3, 50, rng);
  for (int i = 0; i < d.X.rows(); ++i) {
    for (int j = 0; j < 3; ++j) d.X(i, j) += rng.gaussian();
  }
  const MeanModel m = fit_mean_model(d.X, d.U, d.Y, basis);
  const double n = static_cast<double>(d.X.rows());
  for (int cls : {0, 1}) {
    const Eigen::MatrixXd& A =
        cls == 1 ? m.coeffs_class1() : m.coeffs_class0();
    for (int j = 0; j < 3; ++j) {
      Eigen::VectorXd resid_sum = Eigen::VectorXd::Zero(6);
      for (int i = 0; i < d.X.rows(); ++i) {
        if (d.Y[i] != cls) continue;
        const Eigen::VectorXd b = basis.eval_scaled(d.U[i]);
        resid_sum += b * (d.X(i, j) - b.dot(A.col(j)));
      }
      CHECK(resid_sum.cwiseAbs().maxCoeff() <= 1e-8 * n);
    }
  }
}

TEST_CASE("pooled mean modes") {
  SplineBasis basis(0, 1);  // B(u) = 1 for all u
  Eigen::MatrixXd c1(1, 2), c0(1, 2);
  c1 << 1.0, 0.0;
  c0 << 0.0, 1.0;
  const MeanModel m(basis, c1, c0, 0.75);

  const Eigen::VectorXd equal = m.pooled_mean(0.3, PriorMode::kEqual);
  CHECK(equal[0] == doctest::Approx(0.5));
  CHECK(equal[1] == doctest::Approx(0.5));

  const Eigen::VectorXd est = m.pooled_mean(0.3, PriorMode::kEstimated);
  CHECK(est[0] == doctest::Approx(0.75));
  CHECK(est[1] == doctest::Approx(0.25));

  const MeanModel half(basis, c1, c0, 0.5);
  const Eigen::VectorXd a = half.pooled_mean(0.9, PriorMode::kEqual);
  const Eigen::VectorXd b = half.pooled_mean(0.9, PriorMode::kEstimated);
  CHECK(a[0] == b[0]);
  CHECK(a[1] == b[1]);

  // identical class means -> pooled equals either, both modes
  const MeanModel same(basis, c1, c1, 0.7);
  for (PriorMode mode : {PriorMode::kEqual, PriorMode::kEstimated}) {
    const Eigen::VectorXd pm = same.pooled_mean(0.4, mode);
    CHECK(pm[0] == doctest::Approx(1.0));
    CHECK(pm[1] == doctest::Approx(0.0));
  }
}

TEST_CASE("prior estimate and invariant checks") {
  Rng rng(37);
  SplineBasis basis(1, 2);
  const int n = 40;
  Eigen::MatrixXd X(n, 1);
  Eigen::VectorXd U(n);
  Eigen::VectorXi Y(n);
  for (int i = 0; i < n; ++i) {
    U[i] = rng.uniform();
    Y[i] = i < 10 ? 1 : 0;  // 25% class 1
    X(i, 0) = rng.gaussian();
  }
  const MeanModel m = fit_mean_model(X, U, Y, basis);
  CHECK(m.prior_class1() == doctest::Approx(0.25));
  CHECK(m.prior_class0() == doctest::Approx(0.75));

  CHECK_THROWS_AS(MeanModel(basis, Eigen::MatrixXd::Zero(2, 1),
                            Eigen::MatrixXd::Zero(2, 1), 1.0),
                  DimensionError);
  CHECK_THROWS_AS(MeanModel(basis, Eigen::MatrixXd::Zero(3, 1),
                            Eigen::MatrixXd::Zero(2, 1), 0.5),
                  DimensionError);
}
