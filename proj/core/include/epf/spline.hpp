#pragma once

#include <Eigen/Dense>

namespace epf {

// Cubic B-spline basis with `k` basis functions on a clamped, equally spaced
// knot vector over [a, b]. Rows = evaluation points, columns = k.
Eigen::MatrixXd bspline_basis(const Eigen::VectorXd& x, double a, double b, int k);

// Periodic cubic B-spline basis with `k` basis functions on [0, period).
// Value and first two derivatives match across the period boundary.
Eigen::MatrixXd periodic_bspline_basis(const Eigen::VectorXd& x, double period, int k);

// Second-order difference penalty D'D for k coefficients (P-spline penalty).
Eigen::MatrixXd difference_penalty(int k);

// Circular variant for periodic bases.
Eigen::MatrixXd circular_difference_penalty(int k);

// Orthonormal basis Z (k x k-1) of the null space of c', so that theta = Z*g
// satisfies c'theta = 0. Used for sum-to-zero identifiability constraints.
Eigen::MatrixXd constraint_null_space(const Eigen::VectorXd& c);

}  // namespace epf
