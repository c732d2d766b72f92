#pragma once

#include <array>
#include <string>
#include <vector>

#include "epf/features.hpp"
#include "epf/model_spec.hpp"
#include "epf/solver.hpp"

namespace epf {

struct FitOptions {
  CoefficientBounds bounds;  // applied only by constrained specs
  SolverConfig solver;
  int window_rows = 365 * 3;
};

struct HourFit {
  bool ok = false;
  std::string error;  // populated when !ok
  FitResult fit;
  std::vector<DesignColumn> columns;
  Eigen::RowVectorXd prediction_row;
  double origin_level = 0;  // Price(origin, hour)
  bool differenced = false;
};

struct DailyFit {
  std::string model;
  Date origin{};
  Date target{};
  int horizon = 0;
  std::array<HourFit, 24> hours;  // index = hour - 1
};

constexpr int kRegressorGroupCount = 6;

struct ForecastRecord {
  std::string model;
  Date origin{};
  Date target{};
  int horizon = 0;
  int hour = 0;
  double prediction = 0;  // EUR/MWh
  double actual = 0;      // realized price, filled in by the backtest
  // prediction = intercept + sum(components); differenced re-integration folds
  // the origin-day price level into the intercept.
  double intercept = 0;
  std::array<double, kRegressorGroupCount> components{};
  bool flagged = false;
  std::string flag;
  bool nonconverged = false;
};

DailyFit fit_daily(const ModelSpec& spec, const HourlyDataset& data,
                   const FuturesStore& futures, const SeasonalBundle& seasonal,
                   Date origin, int horizon_days, const FitOptions& options);

std::vector<ForecastRecord> forecast_daily(const DailyFit& fit);

double naive_forecast(const HourlyDataset& data, Date origin, int horizon_days,
                      int hour);

// One row per horizon of BIC-selected scaled coefficients for a fixed hour.
struct CoefficientPathTable {
  std::vector<std::string> regressors;
  std::vector<int> horizons;
  Eigen::MatrixXd coefficients;  // horizons x regressors
};

CoefficientPathTable coefficient_path(const ModelSpec& spec, const HourlyDataset& data,
                                      const FuturesStore& futures,
                                      const SeasonalBundle& seasonal, Date origin,
                                      const std::vector<int>& horizons, int hour,
                                      const FitOptions& options);

}  // namespace epf
