#include "epf/spline.hpp"

#include <cmath>
#include <vector>

#include "epf/error.hpp"

namespace epf {

namespace {

// Cox-de Boor evaluation of all cubic B-splines at x for knot vector t.
// Returns values for basis functions 0..(t.size()-5).
void eval_all_cubic(const std::vector<double>& t, double x, std::vector<double>& out) {
  const int degree = 3;
  const int nbasis = int(t.size()) - degree - 1;
  out.assign(size_t(nbasis), 0.0);

  // locate the knot span [t[s], t[s+1]) containing x
  int s = -1;
  for (int i = degree; i < nbasis; ++i) {
    if (x >= t[size_t(i)] && x < t[size_t(i) + 1]) {
      s = i;
      break;
    }
  }
  if (s < 0) {
    // clamp to the last span for x == b
    if (x >= t[size_t(nbasis)]) s = nbasis - 1;
    else return;  // outside the basis support
  }

  // triangular scheme (de Boor), local to the span
  double N[4] = {1.0, 0.0, 0.0, 0.0};
  for (int d = 1; d <= degree; ++d) {
    double saved = 0.0;
    for (int r = 0; r < d; ++r) {
      int i = s - d + 1 + r;
      double left = t[size_t(i + d)] - t[size_t(i)];
      double term = left > 0.0 ? N[r] / left : 0.0;
      double newval = saved + (t[size_t(i + d)] - x) * term;
      saved = (x - t[size_t(i)]) * term;
      N[r] = newval;
    }
    N[d] = saved;
  }
  for (int r = 0; r <= degree; ++r) {
    int idx = s - degree + r;
    if (idx >= 0 && idx < nbasis) out[size_t(idx)] = N[r];
  }
}

// Cardinal cubic B-spline on [0, 4).
double cardinal_cubic(double u) {
  if (u <= 0.0 || u >= 4.0) return 0.0;
  if (u < 1.0) return u * u * u / 6.0;
  if (u < 2.0) {
    double v = u - 1.0;
    return (-3.0 * v * v * v + 3.0 * v * v + 3.0 * v + 1.0) / 6.0;
  }
  if (u < 3.0) {
    double v = u - 2.0;
    return (3.0 * v * v * v - 6.0 * v * v + 4.0) / 6.0;
  }
  double v = 4.0 - u;
  return v * v * v / 6.0;
}

}  // namespace

Eigen::MatrixXd bspline_basis(const Eigen::VectorXd& x, double a, double b, int k) {
  if (k < 4) throw Error(ErrorCode::InvalidConfig, "cubic basis needs k >= 4");
  if (!(b > a)) throw Error(ErrorCode::InvalidConfig, "bad knot range");
  const int degree = 3;
  const int intervals = k - degree;  // so that #basis == k
  std::vector<double> t;
  for (int i = 0; i < degree; ++i) t.push_back(a);
  for (int i = 0; i <= intervals; ++i) {
    t.push_back(a + (b - a) * double(i) / double(intervals));
  }
  for (int i = 0; i < degree; ++i) t.push_back(b);

  Eigen::MatrixXd B(x.size(), k);
  std::vector<double> row;
  for (long i = 0; i < x.size(); ++i) {
    eval_all_cubic(t, x(i), row);
    for (int j = 0; j < k; ++j) B(i, j) = row[size_t(j)];
  }
  return B;
}

Eigen::MatrixXd periodic_bspline_basis(const Eigen::VectorXd& x, double period, int k) {
  if (k < 4) throw Error(ErrorCode::InvalidConfig, "cubic basis needs k >= 4");
  if (!(period > 0)) throw Error(ErrorCode::InvalidConfig, "bad period");
  const double delta = period / double(k);
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(x.size(), k);
  for (long i = 0; i < x.size(); ++i) {
    double xi = std::fmod(x(i), period);
    if (xi < 0) xi += period;
    for (int j = 0; j < k; ++j) {
      // basis j supported on [j*delta, (j+4)*delta) mod period
      double u = (xi - double(j) * delta) / delta;
      double v = cardinal_cubic(u) + cardinal_cubic(u + double(k)) +
                 cardinal_cubic(u - double(k));
      B(i, j) = v;
    }
  }
  return B;
}

Eigen::MatrixXd difference_penalty(int k) {
  if (k < 3) return Eigen::MatrixXd::Zero(k, k);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(k - 2, k);
  for (int i = 0; i < k - 2; ++i) {
    D(i, i) = 1.0;
    D(i, i + 1) = -2.0;
    D(i, i + 2) = 1.0;
  }
  return D.transpose() * D;
}

Eigen::MatrixXd circular_difference_penalty(int k) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    D(i, i) = -2.0;
    D(i, (i + 1) % k) = 1.0;
    D(i, (i + k - 1) % k) = 1.0;
  }
  return D.transpose() * D;
}

Eigen::MatrixXd constraint_null_space(const Eigen::VectorXd& c) {
  const long k = c.size();
  Eigen::MatrixXd M(k, 1);
  M.col(0) = c;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(k, k);
  return Q.rightCols(k - 1);
}

}  // namespace epf
