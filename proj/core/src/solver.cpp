#include "epf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epf/error.hpp"

namespace epf {

double soft_threshold(double z, double t) {
  if (z > t) return z - t;
  if (z < -t) return z + t;
  return 0.0;
}

namespace {

double clip(double v, const Interval& box) {
  return std::min(std::max(v, box.lower), box.upper);
}

}  // namespace

bool fit_constrained_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& xty,
                          const std::vector<Interval>& bounds, double lambda,
                          const SolverConfig& config, Eigen::VectorXd& beta) {
  const int p = int(gram.rows());
  const double l1 = lambda * config.alpha;
  const double l2 = lambda * (1.0 - config.alpha);

  // residual correlation r = xty - gram*beta, maintained incrementally
  Eigen::VectorXd r = xty - gram * beta;
  for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (int j = 0; j < p; ++j) {
      double zj = gram(j, j);
      if (zj <= 0.0) continue;  // degenerate column, keep coefficient fixed
      double rho = r(j) + zj * beta(j);
      double candidate = soft_threshold(rho, l1) / (zj + l2);
      double updated = clip(candidate, bounds[size_t(j)]);
      double delta = updated - beta(j);
      if (delta != 0.0) {
        r -= gram.col(j) * delta;
        beta(j) = updated;
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    if (max_change <= config.tol) return true;
  }
  return false;
}

bool fit_constrained(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const std::vector<Interval>& bounds, double lambda,
                     const SolverConfig& config, Eigen::VectorXd& beta) {
  const double n = double(X.rows());
  Eigen::MatrixXd gram = X.transpose() * X / n;
  Eigen::VectorXd xty = X.transpose() * y / n;
  if (beta.size() != X.cols()) beta = Eigen::VectorXd::Zero(X.cols());
  return fit_constrained_gram(gram, xty, bounds, lambda, config, beta);
}

std::vector<double> lambda_grid(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                const SolverConfig& config) {
  double alpha = std::max(config.alpha, 0.001);
  double n = double(X.rows());
  double lambda_max = 0.0;
  for (int j = 0; j < X.cols(); ++j) {
    lambda_max = std::max(lambda_max, std::abs(X.col(j).dot(y)) / (n * alpha));
  }
  if (lambda_max == 0.0) return {0.0};
  std::vector<double> grid;
  grid.reserve(size_t(config.grid_size));
  if (config.grid_size == 1) return {lambda_max};
  double log_max = std::log(lambda_max);
  double log_min = std::log(lambda_max * config.grid_ratio);
  for (int i = 0; i < config.grid_size; ++i) {
    double t = double(i) / double(config.grid_size - 1);
    grid.push_back(std::exp(log_max + (log_min - log_max) * t));
  }
  return grid;
}

size_t bic_select(const std::vector<PathPoint>& path, long n,
                  std::vector<double>& bic_out) {
  if (path.empty()) throw Error(ErrorCode::EmptyInput, "empty lambda path");
  bic_out.clear();
  bic_out.reserve(path.size());
  size_t best = 0;
  double best_bic = std::numeric_limits<double>::infinity();
  const double log_n = std::log(double(n));
  for (size_t i = 0; i < path.size(); ++i) {
    double bic;
    if (path[i].rss <= 0.0) {
      bic = -std::numeric_limits<double>::infinity();
    } else {
      bic = double(n) * std::log(path[i].rss / double(n)) +
            double(path[i].df + 1) * log_n;
    }
    bic_out.push_back(bic);
    if (bic < best_bic) {  // strict: ties keep the earlier (larger) lambda
      best_bic = bic;
      best = i;
    }
  }
  return best;
}

std::vector<Interval> bounds_to_standardized(const std::vector<Interval>& physical,
                                             const NormalizationStats& stats) {
  if (stats.y_std <= 0.0) throw Error(ErrorCode::DegenerateResponse, "response std is zero");
  std::vector<Interval> out;
  out.reserve(physical.size());
  for (size_t j = 0; j < physical.size(); ++j) {
    double scale = stats.x_std(long(j)) / stats.y_std;
    Interval box;
    box.lower = std::isinf(physical[j].lower) ? physical[j].lower : physical[j].lower * scale;
    box.upper = std::isinf(physical[j].upper) ? physical[j].upper : physical[j].upper * scale;
    out.push_back(box);
  }
  return out;
}

FitResult fit_elastic_net(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const std::vector<Interval>& physical_bounds,
                          const SolverConfig& config) {
  const long n = X.rows();
  const long p = X.cols();
  if (n < 2) throw Error(ErrorCode::InsufficientHistory, "need at least 2 rows");
  if (size_t(p) != physical_bounds.size()) {
    throw Error(ErrorCode::Internal, "bounds/column count mismatch");
  }

  NormalizationStats stats;
  stats.x_mean = X.colwise().mean();
  stats.x_std = Eigen::VectorXd(p);
  for (long j = 0; j < p; ++j) {
    double var = (X.col(j).array() - stats.x_mean(j)).square().sum() / double(n);
    stats.x_std(j) = std::sqrt(var);
  }
  stats.y_mean = y.mean();
  stats.y_std = std::sqrt((y.array() - stats.y_mean).square().sum() / double(n));

  std::vector<int> kept;
  for (long j = 0; j < p; ++j) {
    if (stats.x_std(j) > 1e-12) {
      kept.push_back(int(j));
    } else {
      stats.dropped_columns.push_back(int(j));
    }
  }

  FitResult result;
  result.stats = stats;
  result.coefficients = Eigen::VectorXd::Zero(p);
  result.coefficients_scaled = Eigen::VectorXd::Zero(p);

  if (stats.y_std <= 1e-14) {
    // constant response: intercept-only model
    result.intercept = stats.y_mean;
    result.residuals = y.array() - stats.y_mean;
    result.lambda_selected = 0.0;
    return result;
  }

  const long pk = long(kept.size());
  Eigen::MatrixXd Xs(n, pk);
  std::vector<Interval> keep_bounds;
  NormalizationStats kept_stats = stats;
  kept_stats.x_mean = Eigen::VectorXd(pk);
  kept_stats.x_std = Eigen::VectorXd(pk);
  for (long jk = 0; jk < pk; ++jk) {
    int j = kept[size_t(jk)];
    Xs.col(jk) = (X.col(j).array() - stats.x_mean(j)) / stats.x_std(j);
    kept_stats.x_mean(jk) = stats.x_mean(j);
    kept_stats.x_std(jk) = stats.x_std(j);
    keep_bounds.push_back(physical_bounds[size_t(j)]);
  }
  Eigen::VectorXd ys = (y.array() - stats.y_mean) / stats.y_std;

  std::vector<Interval> std_bounds = bounds_to_standardized(keep_bounds, kept_stats);
  std::vector<double> grid = lambda_grid(Xs, ys, config);

  Eigen::MatrixXd gram = Xs.transpose() * Xs / double(n);
  Eigen::VectorXd xty = Xs.transpose() * ys / double(n);
  double yty = ys.squaredNorm() / double(n);

  std::vector<PathPoint> path;
  path.reserve(grid.size());
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(pk);
  for (double lambda : grid) {
    PathPoint pt;
    pt.lambda = lambda;
    pt.converged = fit_constrained_gram(gram, xty, std_bounds, lambda, config, beta);
    pt.beta = beta;
    double quad = beta.dot(gram * beta);
    pt.rss = std::max(0.0, (yty - 2.0 * xty.dot(beta) + quad) * double(n));
    pt.df = int((beta.array().abs() > 0.0).count());
    path.push_back(std::move(pt));
  }

  std::vector<double> bic;
  size_t selected = bic_select(path, n, bic);
  const PathPoint& sel = path[selected];

  result.lambda_grid = grid;
  result.bic_path = bic;
  result.lambda_selected = sel.lambda;
  result.df = sel.df;
  result.converged = sel.converged;

  double intercept = stats.y_mean;
  for (long jk = 0; jk < pk; ++jk) {
    int j = kept[size_t(jk)];
    double phys = sel.beta(jk) * stats.y_std / stats.x_std(j);
    result.coefficients(j) = phys;
    result.coefficients_scaled(j) = sel.beta(jk);
    intercept -= phys * stats.x_mean(j);
  }
  result.intercept = intercept;
  result.residuals = y - (X * result.coefficients);
  result.residuals.array() -= result.intercept;
  return result;
}

}  // namespace epf
