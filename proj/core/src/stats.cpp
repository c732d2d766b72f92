#include "epf/stats.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "epf/error.hpp"

namespace epf {

const std::vector<DfQuantile>& df_critical_table() {
  // Quantiles of t(gamma) under a driftless random walk, constant-only
  // regression, n = 1000, 1e5 seeded replications.
  static const std::vector<DfQuantile> table = {
      {0.001, -4.0602}, {0.010, -3.4258}, {0.025, -3.1208}, {0.050, -2.8734},
      {0.100, -2.5749}, {0.250, -2.0862}, {0.500, -1.5670}, {0.750, -1.0138},
      {0.900, -0.4315}, {0.950, -0.0615}, {0.975, 0.2511},  {0.990, 0.6096},
      {0.999, 1.3726},
  };
  return table;
}

namespace {

double interpolate_p(double stat) {
  const auto& table = df_critical_table();
  if (stat <= table.front().statistic) return table.front().probability;
  if (stat >= table.back().statistic) return table.back().probability;
  for (size_t i = 1; i < table.size(); ++i) {
    if (stat <= table[i].statistic) {
      double x0 = table[i - 1].statistic, x1 = table[i].statistic;
      double p0 = table[i - 1].probability, p1 = table[i].probability;
      return p0 + (p1 - p0) * (stat - x0) / (x1 - x0);
    }
  }
  return table.back().probability;
}

}  // namespace

AdfResult adf_test(const std::vector<double>& series, int max_lag,
                   const std::string& series_id) {
  const long n = long(series.size());
  if (n < 50) {
    throw Error(ErrorCode::InsufficientHistory,
                "adf test needs >= 50 observations, got " + std::to_string(n));
  }
  if (max_lag < 0 || max_lag > n / 4) {
    throw Error(ErrorCode::InvalidConfig, "bad adf max_lag");
  }

  std::vector<double> dy(size_t(n - 1));
  for (long t = 1; t < n; ++t) dy[size_t(t - 1)] = series[size_t(t)] - series[size_t(t - 1)];

  // Common estimation sample: dy indices max_lag .. n-2 for every candidate.
  const long rows = n - 1 - max_lag;
  if (rows < 20) throw Error(ErrorCode::InsufficientHistory, "adf sample too short");

  double best_aic = std::numeric_limits<double>::infinity();
  int best_p = 0;
  double best_stat = 0;
  for (int p = 0; p <= max_lag; ++p) {
    const long k = 2 + p;
    Eigen::MatrixXd X(rows, k);
    Eigen::VectorXd Y(rows);
    for (long i = 0; i < rows; ++i) {
      long t = max_lag + i;  // index into dy; level lag is series[t]
      Y(i) = dy[size_t(t)];
      X(i, 0) = 1.0;
      X(i, 1) = series[size_t(t)];
      for (int j = 1; j <= p; ++j) X(i, 1 + j) = dy[size_t(t - j)];
    }
    Eigen::MatrixXd xtx = X.transpose() * X;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(xtx);
    if (ldlt.info() != Eigen::Success) {
      throw Error(ErrorCode::SingularFit, "adf regression singular");
    }
    Eigen::VectorXd beta = ldlt.solve(X.transpose() * Y);
    Eigen::VectorXd resid = Y - X * beta;
    double rss = resid.squaredNorm();
    if (!(rss > 0) || !beta.allFinite()) {
      throw Error(ErrorCode::SingularFit, "adf regression degenerate");
    }
    double aic = double(rows) * std::log(rss / double(rows)) + 2.0 * double(k);
    if (aic < best_aic) {
      double s2 = rss / double(rows - k);
      Eigen::MatrixXd xtx_inv =
          ldlt.solve(Eigen::MatrixXd::Identity(k, k));
      double se = std::sqrt(s2 * xtx_inv(1, 1));
      best_aic = aic;
      best_p = p;
      best_stat = beta(1) / se;
    }
  }

  AdfResult res;
  res.series_id = series_id;
  res.lag_order = best_p;
  res.statistic = best_stat;
  res.p_value = interpolate_p(best_stat);
  res.reject_at_5pct = res.p_value < 0.05;
  return res;
}

}  // namespace epf
