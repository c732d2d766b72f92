#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "epf/dates.hpp"
#include "epf/fundamentals.hpp"
#include "epf/futures.hpp"
#include "epf/ingest.hpp"
#include "epf/model_spec.hpp"
#include "epf/seasonal.hpp"

namespace epf {

struct CalendarFeatures {
  double mon = 0, fri = 0, sat = 0, sun = 0;
  double winter = 0, spring = 0, summer = 0;  // meteorological, autumn base
};

CalendarFeatures calendar_features(Date date);

struct ArFeatures {
  double price_t = 0;       // same hour, origin day
  double price_t1 = 0;      // same hour, origin - 1
  double price_t6 = 0;      // same hour, origin - 6
  double price_last_hour = 0;  // hour 24, origin day
};

ArFeatures autoregressive_features(const HourlyDataset& data, Date origin, int hour);

enum class FuelMode { front_month, maturity_h, contemporaneous };

struct FuelPrices {
  double co2 = 0, gas = 0, coal = 0, oil = 0;
  double& operator[](Commodity c);
  double operator[](Commodity c) const;
};

// maturity_h uses maturity ceil(h/30), clamped to [1, 13].
int maturity_for_horizon(int horizon_days);

FuelPrices fuel_features(const FuturesStore& futures, Date origin, FuelMode mode,
                         int horizon_days, Date target);

enum class Delivery { D0, Dm1, Dp1 };

struct PortfolioEntry {
  Delivery delivery;
  int lag_months = 0;       // feature averages over the 30 days ending t - 30*lag
  int maturity_months = 0;  // contract maturity at the averaging window's end
};

struct PortfolioLagSpec {
  int horizon_months = 0;
  std::vector<PortfolioEntry> entries;
};

PortfolioLagSpec portfolio_lag_spec(int horizon_months);
int horizon_months_for_days(int horizon_days);

std::vector<double> portfolio_features(const FuturesStore& futures, Date origin,
                                       int horizon_days, Commodity commodity);

enum class RegressorGroup {
  calendar_week,
  calendar_season,
  autoreg,
  res_load,
  fuels,
  noise,
};

const char* regressor_group_name(RegressorGroup g);

// Provenance of the latest information a column reads, for lookahead audits.
enum class ColumnDating { origin, target };

struct DesignColumn {
  std::string name;
  RegressorGroup group;
  Interval bound;       // physical box; ignored for unconstrained fits
  bool dummy = false;   // stays in levels under differencing
  ColumnDating dating = ColumnDating::origin;
};

struct DesignMatrix {
  std::vector<DesignColumn> columns;
  Eigen::MatrixXd X;
  Eigen::VectorXd y;            // level or first difference of the response
  std::vector<Date> targets;    // response day per row
  int horizon = 0;
  int hour = 0;
  bool differenced = false;
};

// Seasonal models for both targets across expanding refits, plus selection of
// the model serving a given day (latest train_end before the day's year;
// earliest model for days predating the first served year).
struct SeasonalBundle {
  std::vector<SeasonalModel> load_models;  // ascending train_end
  std::vector<SeasonalModel> res_models;

  bool has(SeasonalTarget target) const;
  const SeasonalModel& pick(SeasonalTarget target, Date day) const;
  double forecast(SeasonalTarget target, Date day, int hour) const;
};

struct AssembledDesign {
  DesignMatrix design;
  Eigen::RowVectorXd prediction_row;  // origin-T information only
  Date origin;
  Date target;
  double origin_level = 0;  // Price(origin, hour), re-integration base
};

// Builds the estimation matrix with `window_rows` response rows whose targets
// end at `origin` (lag/difference trimming extends backward), plus the
// prediction row for target = origin + horizon.
AssembledDesign assemble_design(const HourlyDataset& data, const FuturesStore& futures,
                                const SeasonalBundle& seasonal, const ModelSpec& spec,
                                Date origin, int horizon_days, int hour,
                                int window_rows, const CoefficientBounds& bounds);

enum class NoiseKind { brownian, white };

// Appends `count` seeded noise columns (and extends the prediction row), each
// bounded [0, inf) like the fuel columns.
void add_noise_regressors(AssembledDesign& design, int count, NoiseKind kind,
                          std::uint64_t seed);

void dump_design(const DesignMatrix& design, const std::string& path);

}  // namespace epf
