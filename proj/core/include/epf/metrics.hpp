#pragma once

#include <string>
#include <vector>

#include "epf/models.hpp"

namespace epf {

enum class MetricsGrouping { overall, by_year };

struct MetricsResult {
  std::string model;
  int horizon = 0;
  int year = 0;  // 0 for overall grouping
  double rmse = 0;
  double mae = 0;
  long days = 0;        // distinct target days in the group
  long hour_count = 0;  // pooled hourly errors
};

// Pooled MAE = (1/24N) sum |e|, RMSE = sqrt((1/24N) sum e^2); flagged records
// are excluded from the pool.
std::vector<MetricsResult> compute_metrics(const std::vector<ForecastRecord>& records,
                                           MetricsGrouping grouping);

struct DmResult {
  std::string model_a;
  std::string model_b;
  int horizon = 0;
  double statistic = 0;  // negative favors A
  double p_value = 0;    // one-sided, H1: A more accurate
  long days = 0;
  int hac_lag = 0;
  std::string loss = "daily-L1";
};

DmResult dm_test(const std::vector<ForecastRecord>& records_a,
                 const std::vector<ForecastRecord>& records_b, int horizon);

double normal_cdf(double x);

}  // namespace epf
