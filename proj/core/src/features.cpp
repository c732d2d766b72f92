#include "epf/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "epf/error.hpp"

namespace epf {

CalendarFeatures calendar_features(Date date) {
  CalendarFeatures f;
  switch (weekday_index(date)) {
    case 0: f.mon = 1; break;
    case 4: f.fri = 1; break;
    case 5: f.sat = 1; break;
    case 6: f.sun = 1; break;
    default: break;
  }
  int m = month_of(date);
  if (m == 12 || m <= 2) f.winter = 1;
  else if (m <= 5) f.spring = 1;
  else if (m <= 8) f.summer = 1;
  return f;
}

ArFeatures autoregressive_features(const HourlyDataset& data, Date origin, int hour) {
  if (origin - std::chrono::days{6} < data.start_day() || origin > data.end_day()) {
    throw Error(ErrorCode::InsufficientHistory,
                "autoregressive lags need data back to " +
                    format_date(origin - std::chrono::days{6}));
  }
  ArFeatures f;
  f.price_t = data.price(origin, hour);
  f.price_t1 = data.price(origin - std::chrono::days{1}, hour);
  f.price_t6 = data.price(origin - std::chrono::days{6}, hour);
  f.price_last_hour = data.price(origin, 24);
  return f;
}

double& FuelPrices::operator[](Commodity c) {
  switch (c) {
    case Commodity::co2: return co2;
    case Commodity::gas: return gas;
    case Commodity::coal: return coal;
    case Commodity::oil: return oil;
  }
  return co2;
}

double FuelPrices::operator[](Commodity c) const {
  return const_cast<FuelPrices&>(*this)[c];
}

int maturity_for_horizon(int horizon_days) {
  int m = (horizon_days + 29) / 30;
  return std::clamp(m, 1, 13);
}

FuelPrices fuel_features(const FuturesStore& futures, Date origin, FuelMode mode,
                         int horizon_days, Date target) {
  Date when = mode == FuelMode::contemporaneous ? target : origin;
  int maturity = mode == FuelMode::maturity_h ? maturity_for_horizon(horizon_days) : 1;
  FuelPrices out;
  for (Commodity c : {Commodity::co2, Commodity::gas, Commodity::coal, Commodity::oil}) {
    out[c] = futures.last_quote_on_or_before(when, c, maturity);
  }
  return out;
}

int horizon_months_for_days(int horizon_days) {
  return int(std::lround(horizon_days / 30.0));
}

PortfolioLagSpec portfolio_lag_spec(int horizon_months) {
  if (horizon_months < 0 || horizon_months > 12) {
    throw Error(ErrorCode::InvalidConfig,
                "portfolio horizon " + std::to_string(horizon_months) +
                    " months outside 0..12");
  }
  PortfolioLagSpec spec;
  spec.horizon_months = horizon_months;
  for (int lag = horizon_months; lag <= 12; ++lag) {
    for (Delivery d : {Delivery::D0, Delivery::Dm1, Delivery::Dp1}) {
      int offset = d == Delivery::D0 ? 0 : (d == Delivery::Dm1 ? -1 : 1);
      int maturity = lag + offset;
      if (maturity >= 1 && maturity <= 12) spec.entries.push_back({d, lag, maturity});
    }
  }
  return spec;
}

std::vector<double> portfolio_features(const FuturesStore& futures, Date origin,
                                       int horizon_days, Commodity commodity) {
  PortfolioLagSpec spec = portfolio_lag_spec(horizon_months_for_days(horizon_days));
  std::vector<double> out;
  out.reserve(spec.entries.size());
  for (const auto& e : spec.entries) {
    Date end = origin - std::chrono::days{30 * e.lag_months};
    out.push_back(futures.trailing_mean(end, commodity, e.maturity_months, 30));
  }
  return out;
}

const char* regressor_group_name(RegressorGroup g) {
  switch (g) {
    case RegressorGroup::calendar_week: return "calendar_week";
    case RegressorGroup::calendar_season: return "calendar_season";
    case RegressorGroup::autoreg: return "autoreg";
    case RegressorGroup::res_load: return "res_load";
    case RegressorGroup::fuels: return "fuels";
    case RegressorGroup::noise: return "noise";
  }
  return "?";
}

bool SeasonalBundle::has(SeasonalTarget target) const {
  return !(target == SeasonalTarget::load ? load_models : res_models).empty();
}

const SeasonalModel& SeasonalBundle::pick(SeasonalTarget target, Date day) const {
  const auto& models = target == SeasonalTarget::load ? load_models : res_models;
  if (models.empty()) {
    throw Error(ErrorCode::MissingData,
                std::string("no seasonal ") +
                    (target == SeasonalTarget::load ? "load" : "res") + " model");
  }
  Date year_start = make_date(year_of(day), 1, 1);
  const SeasonalModel* best = nullptr;
  for (const auto& m : models) {
    if (m.train_end < year_start && (!best || m.train_end > best->train_end)) {
      best = &m;
    }
  }
  // Days before the first served year fall back to the earliest model.
  return best ? *best : models.front();
}

double SeasonalBundle::forecast(SeasonalTarget target, Date day, int hour) const {
  return forecast_seasonal(pick(target, day), day, hour);
}

namespace {

constexpr Commodity kAllCommodities[] = {Commodity::co2, Commodity::gas,
                                         Commodity::coal, Commodity::oil};

const Interval& commodity_bound(const CoefficientBounds& b, Commodity c) {
  switch (c) {
    case Commodity::co2: return b.co2;
    case Commodity::gas: return b.gas;
    case Commodity::coal: return b.coal;
    case Commodity::oil: return b.oil;
  }
  return b.co2;
}

const char* delivery_suffix(Delivery d) {
  switch (d) {
    case Delivery::D0: return "d0";
    case Delivery::Dm1: return "dm1";
    case Delivery::Dp1: return "dp1";
  }
  return "?";
}

std::vector<DesignColumn> build_columns(const ModelSpec& spec, int horizon_days,
                                        const CoefficientBounds& bounds) {
  std::vector<DesignColumn> cols;
  auto add = [&](std::string name, RegressorGroup g, Interval bound, bool dummy,
                 ColumnDating dating) {
    cols.push_back({std::move(name), g, bound, dummy, dating});
  };
  if (spec.week_dummies) {
    for (const char* n : {"mon", "fri", "sat", "sun"}) {
      add(n, RegressorGroup::calendar_week, bounds.calendar, true, ColumnDating::target);
    }
  }
  if (spec.annual_seasons) {
    for (const char* n : {"winter", "spring", "summer"}) {
      add(n, RegressorGroup::calendar_season, bounds.calendar, true,
          ColumnDating::target);
    }
  }
  if (spec.autoreg) {
    for (const char* n : {"price_t", "price_t1", "price_t6", "price_last_hour"}) {
      add(n, RegressorGroup::autoreg, bounds.autoregressive, false,
          ColumnDating::origin);
    }
  }
  if (spec.res_load) {
    ColumnDating dating = spec.res_load_mode == ResLoadMode::current_actual
                              ? ColumnDating::target
                              : ColumnDating::origin;
    add("res", RegressorGroup::res_load, bounds.res, false, dating);
    add("load", RegressorGroup::res_load, bounds.load, false, dating);
  }
  if (spec.fuels) {
    ColumnDating dating =
        spec.fuels_current() ? ColumnDating::target : ColumnDating::origin;
    if (spec.portfolio) {
      PortfolioLagSpec pl = portfolio_lag_spec(horizon_months_for_days(horizon_days));
      for (Commodity c : kAllCommodities) {
        for (const auto& e : pl.entries) {
          char name[48];
          std::snprintf(name, sizeof(name), "%s_l%d_m%d_%s", commodity_name(c),
                        e.lag_months, e.maturity_months, delivery_suffix(e.delivery));
          add(name, RegressorGroup::fuels, commodity_bound(bounds, c), false, dating);
        }
      }
    } else {
      for (Commodity c : kAllCommodities) {
        add(commodity_name(c), RegressorGroup::fuels, commodity_bound(bounds, c),
            false, dating);
      }
    }
  }
  return cols;
}

}  // namespace

AssembledDesign assemble_design(const HourlyDataset& data, const FuturesStore& futures,
                                const SeasonalBundle& seasonal, const ModelSpec& spec,
                                Date origin, int horizon_days, int hour,
                                int window_rows, const CoefficientBounds& bounds) {
  if (!spec.uses_regression()) {
    throw Error(ErrorCode::InvalidConfig, spec.name + " has no design matrix");
  }
  if (window_rows < 1) throw Error(ErrorCode::InvalidConfig, "empty window");
  const auto h = std::chrono::days{horizon_days};
  const auto one = std::chrono::days{1};

  AssembledDesign out;
  out.origin = origin;
  out.target = origin + h;
  out.design.columns = build_columns(spec, horizon_days, bounds);
  out.design.horizon = horizon_days;
  out.design.hour = hour;
  out.design.differenced = spec.differencing;

  Date first_target = origin - std::chrono::days{window_rows - 1};
  Date earliest = first_target - h;  // info day of the first row
  if (spec.differencing) earliest -= one;
  if (spec.autoreg) earliest -= std::chrono::days{6};
  if (earliest < data.start_day() || origin > data.end_day()) {
    throw Error(ErrorCode::InsufficientHistory,
                spec.name + " window needs data from " + format_date(earliest) +
                    " to " + format_date(origin));
  }

  const long p = long(out.design.columns.size());

  // One level row of regressors for response day `target_day`, built from
  // information dated `info_day` (plus target-dated columns where the
  // model definition allows them, e.g. calendar dummies).
  auto level_row = [&](Date target_day, Date info_day, bool prediction) {
    Eigen::RowVectorXd row(p);
    long j = 0;
    CalendarFeatures cal = calendar_features(target_day);
    if (spec.week_dummies) {
      row(j++) = cal.mon;
      row(j++) = cal.fri;
      row(j++) = cal.sat;
      row(j++) = cal.sun;
    }
    if (spec.annual_seasons) {
      row(j++) = cal.winter;
      row(j++) = cal.spring;
      row(j++) = cal.summer;
    }
    if (spec.autoreg) {
      ArFeatures ar = autoregressive_features(data, info_day, hour);
      row(j++) = ar.price_t;
      row(j++) = ar.price_t1;
      row(j++) = ar.price_t6;
      row(j++) = ar.price_last_hour;
    }
    if (spec.res_load) {
      double res, load;
      switch (spec.res_load_mode) {
        case ResLoadMode::day_ahead: {
          Date fc_day = info_day + one;
          if (!data.contains(fc_day)) {
            throw Error(ErrorCode::MissingData,
                        "no day-ahead forecast for " + format_date(fc_day));
          }
          res = data.value(fc_day, hour, kResDaFc);
          load = data.value(fc_day, hour, kLoadDaFc);
          break;
        }
        case ResLoadMode::seasonal:
          res = seasonal.forecast(SeasonalTarget::res, target_day, hour);
          load = seasonal.forecast(SeasonalTarget::load, target_day, hour);
          break;
        case ResLoadMode::current_actual:
          if (prediction) {
            res = seasonal.forecast(SeasonalTarget::res, target_day, hour);
            load = seasonal.forecast(SeasonalTarget::load, target_day, hour);
          } else {
            res = data.value(target_day, hour, kResActual);
            load = data.value(target_day, hour, kLoadActual);
          }
          break;
        default:
          throw Error(ErrorCode::Internal, "bad res/load mode");
      }
      row(j++) = res;
      row(j++) = load;
    }
    if (spec.fuels) {
      if (spec.portfolio) {
        for (Commodity c : kAllCommodities) {
          for (double v : portfolio_features(futures, info_day, horizon_days, c)) {
            row(j++) = v;
          }
        }
      } else {
        FuelPrices fp;
        if (spec.fuels_current()) {
          fp = prediction
                   ? fuel_features(futures, info_day, FuelMode::maturity_h,
                                   horizon_days, target_day)
                   : fuel_features(futures, info_day, FuelMode::contemporaneous,
                                   horizon_days, target_day);
        } else {
          fp = fuel_features(futures, info_day, FuelMode::front_month, horizon_days,
                             target_day);
        }
        for (Commodity c : kAllCommodities) row(j++) = fp[c];
      }
    }
    return row;
  };

  out.design.X.resize(window_rows, p);
  out.design.y.resize(window_rows);
  out.design.targets.resize(size_t(window_rows));

  Eigen::RowVectorXd prev;
  if (spec.differencing) prev = level_row(first_target - one, first_target - one - h, false);
  double prev_y = spec.differencing ? data.price(first_target - one, hour) : 0.0;

  for (int i = 0; i < window_rows; ++i) {
    Date d = first_target + std::chrono::days{i};
    out.design.targets[size_t(i)] = d;
    Eigen::RowVectorXd row = level_row(d, d - h, false);
    double yd = data.price(d, hour);
    if (spec.differencing) {
      Eigen::RowVectorXd diff = row - prev;
      for (long j = 0; j < p; ++j) {
        if (out.design.columns[size_t(j)].dummy) diff(j) = row(j);
      }
      out.design.X.row(i) = diff;
      out.design.y(i) = yd - prev_y;
      prev = row;
      prev_y = yd;
    } else {
      out.design.X.row(i) = row;
      out.design.y(i) = yd;
    }
  }

  Eigen::RowVectorXd pred = level_row(out.target, origin, true);
  if (spec.differencing) {
    Eigen::RowVectorXd prev_pred = level_row(out.target - one, origin - one, true);
    for (long j = 0; j < p; ++j) {
      if (!out.design.columns[size_t(j)].dummy) pred(j) -= prev_pred(j);
    }
  }
  out.prediction_row = pred;
  out.origin_level = data.price(origin, hour);
  return out;
}

void add_noise_regressors(AssembledDesign& design, int count, NoiseKind kind,
                          std::uint64_t seed) {
  if (count == 0) return;
  const long n = design.design.X.rows();
  const long p = design.design.X.cols();
  Eigen::MatrixXd X(n, p + count);
  X.leftCols(p) = design.design.X;
  Eigen::RowVectorXd pred(p + count);
  pred.head(p) = design.prediction_row;

  std::mt19937_64 rng(seed ^ (kind == NoiseKind::brownian ? 0x62726f776eULL
                                                          : 0x7768697465ULL));
  std::normal_distribution<double> gauss(0.0, 1.0);
  Interval positive{0.0, std::numeric_limits<double>::infinity()};
  for (int c = 0; c < count; ++c) {
    double walk = 0.0;
    for (long i = 0; i < n; ++i) {
      double z = gauss(rng);
      if (kind == NoiseKind::brownian) {
        walk += z;
        X(i, p + c) = walk;
      } else {
        X(i, p + c) = z;
      }
    }
    double z = gauss(rng);
    pred(p + c) = kind == NoiseKind::brownian ? walk + z : z;
    char name[16];
    std::snprintf(name, sizeof(name), "%s%d",
                  kind == NoiseKind::brownian ? "bm" : "wn", c + 1);
    design.design.columns.push_back(
        {name, RegressorGroup::noise, positive, false, ColumnDating::origin});
  }
  design.design.X = std::move(X);
  design.prediction_row = std::move(pred);
}

void dump_design(const DesignMatrix& design, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Internal, "cannot write " + path);
  out << "target,response";
  for (const auto& c : design.columns) out << "," << c.name;
  out << "\n";
  char buf[32];
  for (long i = 0; i < design.X.rows(); ++i) {
    out << format_date(design.targets[size_t(i)]);
    std::snprintf(buf, sizeof(buf), ",%.17g", design.y(i));
    out << buf;
    for (long j = 0; j < design.X.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), ",%.17g", design.X(i, j));
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace epf
