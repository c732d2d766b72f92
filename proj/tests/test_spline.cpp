#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "epf/spline.hpp"

using namespace epf;

namespace {

Eigen::VectorXd linspace(double a, double b, int n) {
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = a + (b - a) * double(i) / double(n - 1);
  return x;
}

}  // namespace

TEST_SUITE("spline") {

TEST_CASE("clamped cubic basis: dimensions and partition of unity") {
  auto x = linspace(0.0, 24.0, 200);
  for (int k : {4, 8, 24}) {
    auto B = bspline_basis(x, 0.0, 24.0, k);
    REQUIRE(B.rows() == 200);
    REQUIRE(B.cols() == k);
    for (int i = 0; i < B.rows(); ++i) {
      CHECK(B.row(i).sum() == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(B.row(i).minCoeff() >= -1e-12);
    }
  }
}

TEST_CASE("clamped cubic basis has full column rank") {
  auto x = linspace(0.0, 24.0, 500);
  auto B = bspline_basis(x, 0.0, 24.0, 24);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(B.transpose() * B);
  CHECK(lu.rank() == 24);
}

TEST_CASE("cubic splines are reproduced exactly in the basis span") {
  // cubic polynomials lie in the span of a clamped cubic B-spline basis
  auto x = linspace(0.0, 10.0, 300);
  auto B = bspline_basis(x, 0.0, 10.0, 12);
  Eigen::VectorXd y(300);
  for (int i = 0; i < 300; ++i) y(i) = 1.0 + 0.5 * x(i) - 0.2 * x(i) * x(i) + 0.01 * std::pow(x(i), 3.0);
  Eigen::VectorXd theta = (B.transpose() * B).ldlt().solve(B.transpose() * y);
  CHECK((B * theta - y).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("periodic basis matches across the period boundary") {
  const double period = 8765.76;
  Eigen::VectorXd lo(1), hi(1);
  lo(0) = 0.0;
  for (double eps : {1e-6, 1e-8}) {
    hi(0) = period - eps;
    auto Blo = periodic_bspline_basis(lo, period, 12);
    auto Bhi = periodic_bspline_basis(hi, period, 12);
    CHECK((Blo - Bhi).cwiseAbs().maxCoeff() < 1e-5);
  }
  // partition of unity holds for the periodic basis too
  auto x = linspace(0.0, period * 0.999, 100);
  auto B = periodic_bspline_basis(x, period, 12);
  for (int i = 0; i < B.rows(); ++i) {
    CHECK(B.row(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("difference penalties have the expected rank and null space") {
  auto P = difference_penalty(10);
  REQUIRE(P.rows() == 10);
  REQUIRE(P.cols() == 10);
  CHECK((P - P.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(P);
  CHECK(lu.rank() == 8);  // second differences kill constants and linears
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(10);
  Eigen::VectorXd lin = linspace(0, 9, 10);
  CHECK((P * ones).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((P * lin).cwiseAbs().maxCoeff() < 1e-12);

  auto C = circular_difference_penalty(10);
  CHECK((C - C.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((C * ones).cwiseAbs().maxCoeff() < 1e-12);  // constants stay unpenalized
  Eigen::FullPivLU<Eigen::MatrixXd> luc(C);
  CHECK(luc.rank() == 9);  // only the constant survives on a circle
}

TEST_CASE("constraint null space is orthonormal and annihilates the constraint") {
  Eigen::VectorXd c(5);
  c << 1, 2, 3, 4, 5;
  auto Z = constraint_null_space(c);
  REQUIRE(Z.rows() == 5);
  REQUIRE(Z.cols() == 4);
  CHECK((c.transpose() * Z).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((Z.transpose() * Z - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-12);
}

}  // TEST_SUITE
