#pragma once

#include <string>
#include <vector>

namespace epf {

struct AdfResult {
  std::string series_id;
  int lag_order = 0;       // AIC-selected augmentation lags
  double statistic = 0;    // t on the level coefficient
  double p_value = 0;      // H1: stationarity; small p rejects a unit root
  bool reject_at_5pct = false;
};

// Const-only augmented Dickey-Fuller test; lag order chosen by AIC up to
// max_lag on a common estimation sample.
AdfResult adf_test(const std::vector<double>& series, int max_lag,
                   const std::string& series_id = "");

struct DfQuantile {
  double probability;
  double statistic;
};

// Simulated quantiles of the const-case Dickey-Fuller t distribution
// (n = 1000, 1e5 replications) used for p-value interpolation.
const std::vector<DfQuantile>& df_critical_table();

}  // namespace epf
