#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vclda/bspline.hpp"
#include "vclda/errors.hpp"
#include "vclda/rng.hpp"

using vclda::Rng;
using vclda::SplineBasis;

TEST_CASE("clamped uniform knot construction") {
  SplineBasis b0(0, 2);
  REQUIRE(b0.knots().size() == 3);
  CHECK(b0.knots()[0] == 0.0);
  CHECK(b0.knots()[1] == 0.5);
  CHECK(b0.knots()[2] == 1.0);

  SplineBasis bez(3, 4);  // single Bezier segment, no interior knots
  REQUIRE(bez.knots().size() == 8);
  for (int i = 0; i < 4; ++i) {
    CHECK(bez.knots()[static_cast<std::size_t>(i)] == 0.0);
    CHECK(bez.knots()[static_cast<std::size_t>(4 + i)] == 1.0);
  }

  SplineBasis cubic(3, 6);
  REQUIRE(cubic.knots().size() == 10);
  CHECK(cubic.knots()[4] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(cubic.knots()[5] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("dimension precondition") {
  CHECK_THROWS_AS(SplineBasis(3, 3), vclda::DimensionError);
  CHECK_THROWS_AS(SplineBasis(-1, 2), vclda::DimensionError);
  CHECK_NOTHROW(SplineBasis(0, 1));
}

TEST_CASE("degree-0 basis is the span indicator") {
  SplineBasis b(0, 2);
  Eigen::VectorXd v = b.eval_unscaled(0.3);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 0.0);

  SplineBasis b4(0, 4);
  Eigen::VectorXd s = b4.eval_scaled(0.1);
  CHECK(s[0] == 2.0);  // sqrt(4) * indicator
  CHECK(s[1] == 0.0);
  CHECK(s[2] == 0.0);
  CHECK(s[3] == 0.0);
}

TEST_CASE("endpoint interpolation for clamped knots") {
  SplineBasis b(3, 6);
  Eigen::VectorXd at0 = b.eval_unscaled(0.0);
  CHECK(at0[0] == doctest::Approx(1.0).epsilon(1e-15));
  for (int k = 1; k < 6; ++k) CHECK(at0[k] == 0.0);

  Eigen::VectorXd at1 = b.eval_scaled(1.0);
  for (int k = 0; k < 5; ++k) CHECK(at1[k] == 0.0);
  CHECK(at1[5] == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
}

TEST_CASE("partition of unity, nonnegativity, local support") {
  Rng rng(7);
  for (int degree = 0; degree <= 3; ++degree) {
    for (int ln = degree + 1; ln <= 12; ++ln) {
      SplineBasis b(degree, ln);
      for (int rep = 0; rep < 200; ++rep) {
        const double u = rng.uniform();
        const Eigen::VectorXd v = b.eval_unscaled(u);
        CHECK(std::abs(v.sum() - 1.0) <= 1e-12);
        int nonzero = 0;
        for (int k = 0; k < ln; ++k) {
          CHECK(v[k] >= 0.0);
          CHECK(v[k] <= 1.0);
          nonzero += v[k] != 0.0;
        }
        CHECK(nonzero <= degree + 1);

        const Eigen::VectorXd s = b.eval_scaled(u);
        CHECK(std::abs(s.sum() - std::sqrt(double(ln))) <= 1e-10);
      }
    }
  }
}

TEST_CASE("scaled equals sqrt(Ln) times unscaled, bit for bit") {
  Rng rng(11);
  SplineBasis b(3, 8);
  const double scale = std::sqrt(8.0);
  for (int rep = 0; rep < 100; ++rep) {
    const double u = rng.uniform();
    const Eigen::VectorXd v = b.eval_unscaled(u);
    const Eigen::VectorXd s = b.eval_scaled(u);
    for (int k = 0; k < 8; ++k) CHECK(s[k] == scale * v[k]);
  }
}

TEST_CASE("inputs outside [0,1] are clamped") {
  SplineBasis b(3, 6);
  CHECK(b.eval_unscaled(-0.5) == b.eval_unscaled(0.0));
  CHECK(b.eval_unscaled(1.5) == b.eval_unscaled(1.0));
}

TEST_CASE("local evaluation matches the full vector") {
  Rng rng(13);
  SplineBasis b(3, 9);
  double local[4];
  for (int rep = 0; rep < 200; ++rep) {
    const double u = rng.uniform();
    const int first = b.eval_scaled_local(u, local);
    const Eigen::VectorXd full = b.eval_scaled(u);
    REQUIRE(first >= 0);
    REQUIRE(first + 3 < 9);
    for (int r = 0; r < 4; ++r) CHECK(full[first + r] == local[r]);
  }
}

TEST_CASE("partition of unity at knots and endpoints") {
  for (int degree = 1; degree <= 3; ++degree) {
    SplineBasis b(degree, 10);
    for (double u : b.knots()) {
      const Eigen::VectorXd v = b.eval_unscaled(u);
      CHECK(std::abs(v.sum() - 1.0) <= 1e-12);
    }
  }
}
