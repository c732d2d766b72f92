#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "epf/fundamentals.hpp"

namespace epf {

struct SolverConfig {
  double alpha = 0.5;       // elastic-net mix, 1 = lasso
  int grid_size = 100;      // lambda grid points
  double grid_ratio = 1e-4; // lambda_min / lambda_max
  double tol = 1e-7;        // max coefficient change per sweep
  int max_sweeps = 10000;
};

struct NormalizationStats {
  Eigen::VectorXd x_mean;
  Eigen::VectorXd x_std;
  double y_mean = 0.0;
  double y_std = 1.0;
  std::vector<int> dropped_columns;  // zero-variance, excluded from the fit
};

struct FitResult {
  double intercept = 0.0;               // EUR/MWh
  Eigen::VectorXd coefficients;         // physical units, dropped columns = 0
  Eigen::VectorXd coefficients_scaled;  // normalized scale
  double lambda_selected = 0.0;
  std::vector<double> lambda_grid;
  std::vector<double> bic_path;
  Eigen::VectorXd residuals;  // physical scale, estimation rows
  int df = 0;                 // nonzero slopes
  bool converged = true;
  NormalizationStats stats;
};

double soft_threshold(double z, double t);

// Cyclical coordinate descent for
//   (1/2n)||y - X b||^2 + lambda * (alpha ||b||_1 + (1-alpha)/2 ||b||^2)
// subject to per-column boxes. X is standardized; the intercept is handled
// by centering upstream and never penalized. `beta` carries the warm start.
// Returns false on NonConvergence (best iterate kept in beta).
bool fit_constrained(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const std::vector<Interval>& bounds, double lambda,
                     const SolverConfig& config, Eigen::VectorXd& beta);

// Same update loop on precomputed gram = X'X/n and xty = X'y/n.
bool fit_constrained_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& xty,
                          const std::vector<Interval>& bounds, double lambda,
                          const SolverConfig& config, Eigen::VectorXd& beta);

// Descending exponential lambda grid; lambda_max = max_j |x_j'y| / (n*alpha).
std::vector<double> lambda_grid(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                const SolverConfig& config);

// BIC(lambda) = n*ln(RSS/n) + df*ln(n), df = nonzero slopes + 1.
// Ties break toward larger lambda; RSS = 0 wins outright.
struct PathPoint {
  double lambda;
  Eigen::VectorXd beta;
  double rss;
  int df;  // nonzero slopes
  bool converged;
};
size_t bic_select(const std::vector<PathPoint>& path, long n, std::vector<double>& bic_out);

// Physical box -> standardized box via [l*sx/sy, u*sx/sy].
std::vector<Interval> bounds_to_standardized(const std::vector<Interval>& physical,
                                             const NormalizationStats& stats);

// End-to-end driver: normalize, drop zero-variance columns, map bounds, fit a
// warm-started lambda path, BIC-select, destandardize.
FitResult fit_elastic_net(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          const std::vector<Interval>& physical_bounds,
                          const SolverConfig& config);

}  // namespace epf
