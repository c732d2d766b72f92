#pragma once

// Reference implementations used to cross-check the production solver:
// a projected proximal-gradient minimizer for the box-constrained elastic
// net, plus instance generation helpers shared by the unit and acceptance
// test binaries.

#include <Eigen/Dense>
#include <algorithm>
#include <random>
#include <vector>

#include "epf/fundamentals.hpp"
#include "epf/solver.hpp"

namespace epf_test {

inline double elastic_net_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                    const Eigen::VectorXd& beta, double lambda,
                                    double alpha) {
  const double n = double(X.rows());
  double rss = (y - X * beta).squaredNorm();
  return rss / (2.0 * n) +
         lambda * (alpha * beta.lpNorm<1>() + 0.5 * (1.0 - alpha) * beta.squaredNorm());
}

// Projected proximal-gradient descent on the same objective. The smooth part
// is the quadratic plus the ridge term; the L1 term and the box are handled
// by a soft-threshold followed by clipping (the exact prox of their sum).
inline Eigen::VectorXd pgd_oracle(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                  const std::vector<epf::Interval>& bounds,
                                  double lambda, double alpha, long max_iters = 1000000,
                                  double tol = 1e-14) {
  const long n = X.rows();
  const long p = X.cols();
  Eigen::MatrixXd gram = X.transpose() * X / double(n);
  Eigen::VectorXd xty = X.transpose() * y / double(n);
  double ridge = lambda * (1.0 - alpha);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  double lipschitz = es.eigenvalues().maxCoeff() + ridge;
  if (lipschitz <= 0) lipschitz = 1.0;
  const double step = 1.0 / lipschitz;
  const double thresh = step * lambda * alpha;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  for (long it = 0; it < max_iters; ++it) {
    Eigen::VectorXd grad = gram * beta - xty + ridge * beta;
    Eigen::VectorXd next(p);
    for (long j = 0; j < p; ++j) {
      double z = beta(j) - step * grad(j);
      double soft = (z > thresh) ? z - thresh : (z < -thresh ? z + thresh : 0.0);
      next(j) = std::clamp(soft, bounds[size_t(j)].lower, bounds[size_t(j)].upper);
    }
    double change = (next - beta).cwiseAbs().maxCoeff();
    beta = next;
    if (change < tol) break;
  }
  return beta;
}

struct RandomInstance {
  Eigen::MatrixXd X;  // standardized columns
  Eigen::VectorXd y;  // centered
  std::vector<epf::Interval> bounds;
  double lambda = 0.1;
  double alpha = 0.5;
};

inline RandomInstance random_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> n_dist(30, 200), p_dist(1, 20);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  RandomInstance inst;
  int n = n_dist(rng);
  int p = p_dist(rng);
  inst.X.resize(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) inst.X(i, j) = gauss(rng);
  }
  // standardize columns and draw a sparse ground truth
  Eigen::VectorXd truth(p);
  for (int j = 0; j < p; ++j) {
    auto col = inst.X.col(j);
    col.array() -= col.mean();
    double sd = std::sqrt(col.squaredNorm() / double(n));
    col /= sd;
    truth(j) = unif(rng) < 0.5 ? 0.0 : 2.0 * gauss(rng);
  }
  inst.y.resize(n);
  for (int i = 0; i < n; ++i) inst.y(i) = inst.X.row(i).dot(truth) + gauss(rng);
  inst.y.array() -= inst.y.mean();

  inst.bounds.resize(size_t(p));
  for (int j = 0; j < p; ++j) {
    double lo = -2.0 + 2.5 * unif(rng);  // in [-2, 0.5]
    double hi = lo + 0.1 + 2.9 * unif(rng);
    inst.bounds[size_t(j)] = {lo, hi};
  }
  inst.lambda = 0.001 + 0.5 * unif(rng);
  inst.alpha = 0.5;
  return inst;
}

// Max KKT residual of `beta` for the box-constrained elastic net.
inline double kkt_residual(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                           const std::vector<epf::Interval>& bounds,
                           const Eigen::VectorXd& beta, double lambda, double alpha) {
  const long n = X.rows();
  Eigen::VectorXd grad =
      X.transpose() * (X * beta - y) / double(n) + lambda * (1.0 - alpha) * beta;
  double worst = 0.0;
  for (long j = 0; j < beta.size(); ++j) {
    double g = grad(j);
    double la = lambda * alpha;
    const auto& b = bounds[size_t(j)];
    // One-sided directional derivatives of the full objective at beta(j).
    double right = g + la * (beta(j) >= 0 ? 1.0 : -1.0);  // d/d(+delta)
    double left = g + la * (beta(j) > 0 ? 1.0 : -1.0);    // d/d(-delta), same sign conv
    double r = 0.0;
    if (beta(j) <= b.lower + 1e-12) {
      // only increasing moves are feasible: right derivative must be >= 0
      r = std::max(0.0, -right);
    } else if (beta(j) >= b.upper - 1e-12) {
      // only decreasing moves are feasible: left derivative must be <= 0
      r = std::max(0.0, left);
    } else if (beta(j) == 0.0) {
      r = std::max(0.0, std::abs(g) - la);
    } else {
      r = std::abs(g + la * (beta(j) > 0 ? 1.0 : -1.0));
    }
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace epf_test
