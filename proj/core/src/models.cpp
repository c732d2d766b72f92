#include "epf/models.hpp"

#include <algorithm>

#include "epf/error.hpp"

namespace epf {

namespace {

ModelSpec make_spec(std::string name, bool wd, bool as, bool ar, bool rl, bool fu,
                    bool constrained, bool diff, bool current, bool hybrid,
                    bool portfolio, ResLoadMode rl_mode) {
  ModelSpec s;
  s.name = std::move(name);
  s.week_dummies = wd;
  s.annual_seasons = as;
  s.autoreg = ar;
  s.res_load = rl;
  s.fuels = fu;
  s.constrained = constrained;
  s.differencing = diff;
  s.current = current;
  s.short_term_hybrid = hybrid;
  s.portfolio = portfolio;
  s.res_load_mode = rl_mode;
  return s;
}

}  // namespace

std::vector<ModelSpec> model_catalog() {
  std::vector<ModelSpec> specs;
  ModelSpec naive;
  naive.name = "naive";
  naive.naive = true;
  specs.push_back(naive);
  auto da = ResLoadMode::day_ahead;
  auto cur = ResLoadMode::current_actual;
  //                     name          wd    as     ar     rl     fu    con   diff  cur   hyb   port
  specs.push_back(make_spec("wd",        true, false, false, false, false, false, false, false, false, false, da));
  specs.push_back(make_spec("expert",    true, true,  true,  true,  true,  false, false, false, false, false, da));
  specs.push_back(make_spec("constr",    true, true,  true,  true,  true,  true,  false, false, false, false, da));
  specs.push_back(make_spec("constr-diff", true, true, true, true,  true,  true,  true,  false, false, false, da));
  specs.push_back(make_spec("portfolio", true, true,  true,  true,  true,  true,  false, false, false, true,  da));
  specs.push_back(make_spec("short-term", true, true, true,  true,  true,  true,  false, false, true,  false, cur));
  specs.push_back(make_spec("current",   true, true,  true,  true,  true,  true,  false, true,  false, false, cur));
  specs.push_back(make_spec("wd-rl",     true, false, false, true,  false, true,  false, false, false, false, ResLoadMode::seasonal));
  specs.push_back(make_spec("wd-rl-c",   true, false, false, true,  false, true,  false, true,  false, false, cur));
  specs.push_back(make_spec("wd-arl-c",  true, false, true,  true,  false, true,  false, true,  false, false, cur));
  specs.push_back(make_spec("wd-f",      true, false, false, false, true,  true,  false, false, false, false, da));
  specs.push_back(make_spec("wd-f-c",    true, false, false, false, true,  true,  false, true,  false, false, da));
  return specs;
}

const ModelSpec& find_model_spec(const std::string& name) {
  static const std::vector<ModelSpec> catalog = model_catalog();
  for (const auto& s : catalog) {
    if (s.name == name) return s;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown model '" + name + "'");
}

DailyFit fit_daily(const ModelSpec& spec, const HourlyDataset& data,
                   const FuturesStore& futures, const SeasonalBundle& seasonal,
                   Date origin, int horizon_days, const FitOptions& options) {
  if (spec.naive) {
    throw Error(ErrorCode::InvalidConfig, "naive model has nothing to fit");
  }
  DailyFit daily;
  daily.model = spec.name;
  daily.origin = origin;
  daily.target = origin + std::chrono::days{horizon_days};
  daily.horizon = horizon_days;

  for (int hour = 1; hour <= 24; ++hour) {
    HourFit& hf = daily.hours[size_t(hour - 1)];
    try {
      AssembledDesign ad =
          assemble_design(data, futures, seasonal, spec, origin, horizon_days, hour,
                          options.window_rows, options.bounds);
      std::vector<Interval> box(ad.design.columns.size());
      if (spec.constrained) {
        for (size_t j = 0; j < box.size(); ++j) box[j] = ad.design.columns[j].bound;
      }
      hf.fit = fit_elastic_net(ad.design.X, ad.design.y, box, options.solver);
      hf.columns = ad.design.columns;
      hf.prediction_row = ad.prediction_row;
      hf.origin_level = ad.origin_level;
      hf.differenced = ad.design.differenced;
      hf.ok = true;
    } catch (const Error& e) {
      hf.ok = false;
      hf.error = e.what();  // already carries the code name
    }
  }
  return daily;
}

std::vector<ForecastRecord> forecast_daily(const DailyFit& fit) {
  std::vector<ForecastRecord> records;
  records.reserve(24);
  for (int hour = 1; hour <= 24; ++hour) {
    const HourFit& hf = fit.hours[size_t(hour - 1)];
    ForecastRecord rec;
    rec.model = fit.model;
    rec.origin = fit.origin;
    rec.target = fit.target;
    rec.horizon = fit.horizon;
    rec.hour = hour;
    if (!hf.ok) {
      rec.flagged = true;
      rec.flag = hf.error;
      records.push_back(std::move(rec));
      continue;
    }
    rec.intercept = hf.fit.intercept + (hf.differenced ? hf.origin_level : 0.0);
    double pred = rec.intercept;
    for (long j = 0; j < hf.prediction_row.size(); ++j) {
      double c = hf.fit.coefficients(j) * hf.prediction_row(j);
      rec.components[size_t(hf.columns[size_t(j)].group)] += c;
      pred += c;
    }
    rec.prediction = pred;
    rec.nonconverged = !hf.fit.converged;
    records.push_back(std::move(rec));
  }
  return records;
}

double naive_forecast(const HourlyDataset& data, Date origin, int horizon_days,
                      int hour) {
  Date target = origin + std::chrono::days{horizon_days};
  int wd = weekday_index(target);  // 0 = Mon
  Date source = origin;
  if (!(wd >= 1 && wd <= 3)) {
    int delta = (weekday_index(origin) - wd + 7) % 7;
    source = origin - std::chrono::days{delta};
  }
  if (source < data.start_day() || origin > data.end_day()) {
    throw Error(ErrorCode::InsufficientHistory,
                "naive forecast needs price data on " + format_date(source));
  }
  return data.price(source, hour);
}

CoefficientPathTable coefficient_path(const ModelSpec& spec, const HourlyDataset& data,
                                      const FuturesStore& futures,
                                      const SeasonalBundle& seasonal, Date origin,
                                      const std::vector<int>& horizons, int hour,
                                      const FitOptions& options) {
  if (horizons.empty()) throw Error(ErrorCode::EmptyInput, "no horizons");
  CoefficientPathTable table;
  table.horizons = horizons;
  for (size_t i = 0; i < horizons.size(); ++i) {
    AssembledDesign ad =
        assemble_design(data, futures, seasonal, spec, origin, horizons[i], hour,
                        options.window_rows, options.bounds);
    std::vector<Interval> box(ad.design.columns.size());
    if (spec.constrained) {
      for (size_t j = 0; j < box.size(); ++j) box[j] = ad.design.columns[j].bound;
    }
    FitResult fit = fit_elastic_net(ad.design.X, ad.design.y, box, options.solver);
    if (i == 0) {
      for (const auto& c : ad.design.columns) table.regressors.push_back(c.name);
      table.coefficients.resize(long(horizons.size()), long(table.regressors.size()));
      table.coefficients.setZero();
    }
    if (size_t(fit.coefficients_scaled.size()) != table.regressors.size()) {
      throw Error(ErrorCode::Internal, "regressor set varies across horizons");
    }
    table.coefficients.row(long(i)) = fit.coefficients_scaled.transpose();
  }
  return table;
}

}  // namespace epf
