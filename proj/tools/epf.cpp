// Command-line frontend: ingest -> seasonal -> backtest -> eval/report, plus a
// synthetic-data generator and a self-contained demo pipeline.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "epf/backtest.hpp"
#include "epf/config.hpp"
#include "epf/error.hpp"
#include "epf/report.hpp"
#include "epf/stats.hpp"
#include "epf/synthetic.hpp"

namespace fs = std::filesystem;
using namespace epf;

namespace {

const std::vector<std::string> kConfigKeys = {
    "hourly",     "futures",   "tz",        "out",       "data",
    "models",     "horizons",  "eval_start", "eval_end",  "window_rows",
    "step_days",  "threads",   "seed",      "bounds_mode", "alpha",
    "grid_size",  "grid_ratio", "tol",      "years",     "start_year",
    "hour",       "metric",    "zero_noise"};

std::map<std::string, std::string> g_config;

std::string cfg(const std::string& key, const std::string& fallback) {
  auto it = g_config.find(key);
  return it == g_config.end() ? fallback : it->second;
}

int cfg_int(const std::string& key, int fallback) {
  auto it = g_config.find(key);
  return it == g_config.end() ? fallback : std::stoi(it->second);
}

Date parse_date_arg(const std::string& s, const char* what) {
  try {
    return parse_date(s);
  } catch (const Error&) {
    throw Error(ErrorCode::InvalidConfig,
                std::string(what) + ": expected YYYY-MM-DD, got '" + s + "'");
  }
}

BoundsMode parse_bounds_mode(const std::string& s) {
  if (s == "table4") return BoundsMode::table4;
  if (s == "appendixB") return BoundsMode::appendixB;
  throw Error(ErrorCode::InvalidConfig,
              "bounds_mode must be table4 or appendixB, got '" + s + "'");
}

HourlyDataset load_data_dir(const std::string& dir) {
  return load_hourly_dataset(dir + "/dataset.csv");
}

FuturesStore load_futures_dir(const std::string& dir) {
  return parse_futures_csv(dir + "/futures.csv");
}

SeasonalBundle load_seasonal_dir(const std::string& dir) {
  SeasonalBundle bundle;
  std::vector<std::string> paths;
  if (fs::exists(dir)) {
    for (const auto& e : fs::directory_iterator(dir)) {
      std::string name = e.path().filename().string();
      if (name.rfind("seasonal_", 0) == 0 && e.path().extension() == ".txt") {
        paths.push_back(e.path().string());
      }
    }
  }
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) {
    SeasonalModel m = load_seasonal_model(p);
    (m.target == SeasonalTarget::load ? bundle.load_models : bundle.res_models)
        .push_back(std::move(m));
  }
  auto by_train_end = [](const SeasonalModel& a, const SeasonalModel& b) {
    return a.train_end < b.train_end;
  };
  std::sort(bundle.load_models.begin(), bundle.load_models.end(), by_train_end);
  std::sort(bundle.res_models.begin(), bundle.res_models.end(), by_train_end);
  return bundle;
}

void run_ingest(const std::string& hourly, const std::string& futures,
                const std::string& tz, const std::string& out) {
  TzMode mode;
  if (tz == "local") mode = TzMode::local;
  else if (tz == "utc") mode = TzMode::utc;
  else throw Error(ErrorCode::InvalidConfig, "tz must be local or utc");
  fs::create_directories(out);
  HourlyDataset data = adjust_clock_change(parse_hourly_csv(hourly, mode));
  save_hourly_dataset(data, out + "/dataset.csv");
  FuturesStore store = parse_futures_csv(futures);
  save_futures_store(store, out + "/futures.csv");
  write_ingest_manifest(out + "/ingest_manifest.json", data, mode);
  std::cout << "ingested " << data.day_count() << " days ("
            << format_date(data.start_day()) << " to " << format_date(data.end_day())
            << "), " << store.quotes().size() << " futures quotes -> " << out
            << "\n";
}

void run_seasonal(const std::string& data_dir, const std::string& out) {
  HourlyDataset data = load_data_dir(data_dir);
  fs::create_directories(out);
  auto schedule = expanding_refit_schedule(data.start_day(), data.end_day());
  for (const auto& entry : schedule) {
    long days = (entry.train_end - data.start_day()).count() + 1;
    long n = days * 24;
    for (SeasonalTarget target : {SeasonalTarget::load, SeasonalTarget::res}) {
      int col = target == SeasonalTarget::load ? kLoadActual : kResActual;
      Eigen::VectorXd y(n);
      for (long i = 0; i < n; ++i) {
        y(i) = data.value(data.start_day() + std::chrono::days{i / 24},
                          int(i % 24) + 1, col);
      }
      auto terms = target == SeasonalTarget::load ? default_load_terms()
                                                  : default_res_terms();
      SeasonalModel model = fit_seasonal(y, data.start_day(), target, terms, {});
      std::string name = target == SeasonalTarget::load ? "load" : "res";
      std::string path = out + "/seasonal_" + name + "_" +
                         std::to_string(entry.serve_year) + ".txt";
      save_seasonal_model(model, path);
      std::cout << "seasonal " << name << " trained through "
                << format_date(entry.train_end) << " serves " << entry.serve_year
                << " -> " << path << "\n";
    }
  }
}

BacktestConfig make_backtest_config(const std::string& models,
                                    const std::string& horizons,
                                    const std::string& eval_start,
                                    const std::string& eval_end, int window_rows,
                                    int step_days, int threads,
                                    std::uint64_t seed, const std::string& bounds,
                                    const std::string& out) {
  BacktestConfig c;
  c.models = split_list(models);
  if (!horizons.empty()) c.horizons = parse_int_list(horizons);
  c.eval_start = parse_date_arg(eval_start, "--eval-start");
  c.eval_end = parse_date_arg(eval_end, "--eval-end");
  c.window_rows = window_rows;
  c.step_days = step_days;
  c.threads = threads;
  c.seed = seed;
  c.bounds_mode = parse_bounds_mode(bounds);
  c.out_dir = out;
  return c;
}

void run_backtest_cmd(const std::string& data_dir, const BacktestConfig& config) {
  HourlyDataset data = load_data_dir(data_dir);
  FuturesStore futures = load_futures_dir(data_dir);
  SeasonalBundle seasonal = load_seasonal_dir(data_dir);
  RecordStore store = run_backtest(config, data, futures, seasonal);
  save_record_store(store, config.out_dir);
  std::cout << "backtest wrote " << store.manifest.record_count << " records ("
            << store.manifest.flagged_count << " flagged) in "
            << store.manifest.wall_seconds << "s -> " << config.out_dir << "\n";
}

void run_demo(const std::string& out, std::uint64_t seed, int threads) {
  fs::create_directories(out);
  SyntheticOptions opts;
  opts.years = 5;
  opts.start_year = 2015;
  opts.seed = seed;
  std::cout << "demo: generating synthetic market...\n";
  generate_synthetic(opts, out + "/hourly.csv", out + "/futures.csv");
  std::cout << "demo: ingesting...\n";
  run_ingest(out + "/hourly.csv", out + "/futures.csv", "local", out + "/data");
  std::cout << "demo: fitting seasonal models...\n";
  run_seasonal(out + "/data", out + "/data");

  BacktestConfig config = make_backtest_config(
      "naive,wd,constr", "1,30", "2018-06-01", "2018-08-24", 1095, 7, threads,
      seed, "table4", out + "/records");
  std::cout << "demo: backtesting " << config.models.size() << " models...\n";
  run_backtest_cmd(out + "/data", config);

  auto records = load_record_store(out + "/records");
  auto metrics = compute_metrics(records, MetricsGrouping::overall);
  fs::create_directories(out + "/reports");
  Table t9 = table_by_horizon(metrics, Metric::rmse);
  write_text_file(out + "/reports/table_by_horizon.csv", render_delimited(t9));
  write_text_file(out + "/reports/table_by_horizon.svg",
                  svg_table_heatmap(t9, "RMSE by model and horizon (EUR/MWh)"));

  std::vector<ForecastRecord> constr30;
  for (const auto& r : records) {
    if (r.model == "constr" && r.horizon == 30) constr30.push_back(r);
  }
  write_text_file(out + "/reports/components_constr_h30.svg",
                  svg_components(constr30, "constr h=30 forecast components"));
  std::cout << "demo: reports -> " << out << "/reports\n";
}

}  // namespace

int main(int argc, char** argv) {
  // Config file pre-pass: --config PATH or MIDTERM_EPF_CONFIG.
  std::string config_path;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  }
  if (config_path.empty()) {
    if (const char* env = std::getenv("MIDTERM_EPF_CONFIG")) config_path = env;
  }

  CLI::App app{"Mid- and long-term hourly electricity price forecasting"};
  app.require_subcommand(1);
  std::string config_opt;
  app.add_option("--config", config_opt, "key=value config file presetting flags");

  try {
    if (!config_path.empty()) g_config = parse_config_file(config_path, kConfigKeys);

    // generate
    auto* gen = app.add_subcommand("generate", "Write synthetic hourly.csv/futures.csv");
    int gen_years = cfg_int("years", 5);
    int gen_start_year = cfg_int("start_year", 2015);
    std::uint64_t gen_seed = std::uint64_t(cfg_int("seed", 1));
    bool gen_zero_noise = cfg("zero_noise", "0") == "1";
    std::string gen_out = cfg("out", ".");
    gen->add_option("--years", gen_years, "whole calendar years (>= 4)");
    gen->add_option("--start-year", gen_start_year, "first calendar year");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_flag("--zero-noise", gen_zero_noise, "deterministic, price = merit order");
    gen->add_option("--out", gen_out, "output directory");
    gen->callback([&] {
      SyntheticOptions opts;
      opts.years = gen_years;
      opts.start_year = gen_start_year;
      opts.seed = gen_seed;
      opts.zero_noise = gen_zero_noise;
      fs::create_directories(gen_out);
      generate_synthetic(opts, gen_out + "/hourly.csv", gen_out + "/futures.csv");
      std::cout << "wrote " << gen_out << "/hourly.csv and " << gen_out
                << "/futures.csv\n";
    });

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Parse and regularize raw CSV inputs");
    std::string in_hourly = cfg("hourly", "hourly.csv");
    std::string in_futures = cfg("futures", "futures.csv");
    std::string in_tz = cfg("tz", "local");
    std::string in_out = cfg("out", "data");
    ingest->add_option("--hourly", in_hourly, "hourly CSV path");
    ingest->add_option("--futures", in_futures, "futures CSV path");
    ingest->add_option("--tz", in_tz, "timestamp convention: local or utc");
    ingest->add_option("--out", in_out, "output directory");
    ingest->callback([&] { run_ingest(in_hourly, in_futures, in_tz, in_out); });

    // seasonal
    auto* seasonal = app.add_subcommand("seasonal", "Fit expanding seasonal models");
    std::string se_data = cfg("data", "data");
    std::string se_out = cfg("out", "");
    seasonal->add_option("--data", se_data, "ingested data directory");
    seasonal->add_option("--out", se_out, "output directory (default: --data)");
    seasonal->callback(
        [&] { run_seasonal(se_data, se_out.empty() ? se_data : se_out); });

    // backtest
    auto* bt = app.add_subcommand("backtest", "Rolling-window forecasting study");
    std::string bt_data = cfg("data", "data");
    std::string bt_models = cfg("models", "naive,wd,constr");
    std::string bt_horizons = cfg("horizons", "");
    std::string bt_start = cfg("eval_start", "2018-04-01");
    std::string bt_end = cfg("eval_end", "2024-04-01");
    int bt_window = cfg_int("window_rows", 1095);
    int bt_step = cfg_int("step_days", 1);
    int bt_threads = cfg_int("threads", default_thread_count());
    std::uint64_t bt_seed = std::uint64_t(cfg_int("seed", 1));
    std::string bt_bounds = cfg("bounds_mode", "table4");
    std::string bt_out = cfg("out", "records");
    bt->add_option("--data", bt_data, "ingested data directory");
    bt->add_option("--models", bt_models, "comma-separated model names");
    bt->add_option("--horizons", bt_horizons, "comma-separated horizons in days");
    bt->add_option("--eval-start", bt_start, "first target day");
    bt->add_option("--eval-end", bt_end, "last target day");
    bt->add_option("--window", bt_window, "estimation window rows");
    bt->add_option("--step", bt_step, "target day stride");
    bt->add_option("--threads", bt_threads, "worker threads");
    bt->add_option("--seed", bt_seed, "rng seed");
    bt->add_option("--bounds", bt_bounds, "table4 or appendixB");
    bt->add_option("--out", bt_out, "record store directory");
    bt->callback([&] {
      run_backtest_cmd(bt_data, make_backtest_config(
                                    bt_models, bt_horizons, bt_start, bt_end,
                                    bt_window, bt_step, bt_threads, bt_seed,
                                    bt_bounds, bt_out));
    });

    // eval
    auto* eval = app.add_subcommand("eval", "Score persisted forecast records");
    eval->require_subcommand(1);
    auto* ev_metrics = eval->add_subcommand("metrics", "Pooled MAE/RMSE");
    std::string ev_records = cfg("out", "records");
    bool ev_by_year = false;
    std::string ev_out;
    ev_metrics->add_option("--records", ev_records, "record store directory");
    ev_metrics->add_flag("--by-year", ev_by_year, "group by target year");
    ev_metrics->add_option("--out", ev_out, "write CSV here instead of stdout");
    ev_metrics->callback([&] {
      auto records = load_record_store(ev_records);
      auto results = compute_metrics(
          records, ev_by_year ? MetricsGrouping::by_year : MetricsGrouping::overall);
      Table t;
      t.header = {"model", "horizon", "year", "rmse", "mae", "days"};
      for (const auto& r : results) {
        char rmse[32], mae[32];
        std::snprintf(rmse, sizeof(rmse), "%.4f", r.rmse);
        std::snprintf(mae, sizeof(mae), "%.4f", r.mae);
        t.rows.push_back({r.model, std::to_string(r.horizon), std::to_string(r.year),
                          rmse, mae, std::to_string(r.days)});
      }
      std::string text = render_delimited(t);
      if (ev_out.empty()) std::cout << text;
      else write_text_file(ev_out, text);
    });

    auto* ev_dm = eval->add_subcommand("dm", "Diebold-Mariano comparison");
    std::string dm_records = cfg("out", "records");
    std::string dm_a, dm_b;
    int dm_h = 1;
    ev_dm->add_option("--records", dm_records, "record store directory");
    ev_dm->add_option("--a", dm_a, "model A")->required();
    ev_dm->add_option("--b", dm_b, "model B")->required();
    ev_dm->add_option("--horizon", dm_h, "horizon in days")->required();
    ev_dm->callback([&] {
      auto records = load_record_store(dm_records);
      std::vector<ForecastRecord> ra, rb;
      for (const auto& r : records) {
        if (r.model == dm_a) ra.push_back(r);
        if (r.model == dm_b) rb.push_back(r);
      }
      DmResult res = dm_test(ra, rb, dm_h);
      std::cout << "a=" << dm_a << " b=" << dm_b << " horizon=" << res.horizon
                << " loss=" << res.loss << " hac_lag=" << res.hac_lag
                << " days=" << res.days << " statistic=" << res.statistic
                << " p_value=" << res.p_value << "\n";
    });

    // diag
    auto* diag = app.add_subcommand("diag", "Diagnostics");
    diag->require_subcommand(1);
    auto* adf = diag->add_subcommand("adf", "Unit-root test on an hourly series");
    std::string adf_data = cfg("data", "data");
    std::string adf_target = "price";
    int adf_hour = cfg_int("hour", 9);
    int adf_year = 0;
    int adf_max_lag = 30;
    adf->add_option("--data", adf_data, "ingested data directory");
    adf->add_option("--target", adf_target, "price, load or res");
    adf->add_option("--hour", adf_hour, "hour 1..24");
    adf->add_option("--year", adf_year, "restrict to one calendar year");
    adf->add_option("--max-lag", adf_max_lag, "AIC lag search bound");
    adf->callback([&] {
      HourlyDataset data = load_data_dir(adf_data);
      int col;
      if (adf_target == "price") col = kPrice;
      else if (adf_target == "load") col = kLoadActual;
      else if (adf_target == "res") col = kResActual;
      else throw Error(ErrorCode::InvalidConfig, "target must be price, load or res");
      if (adf_hour < 1 || adf_hour > 24) {
        throw Error(ErrorCode::InvalidConfig, "hour must be 1..24");
      }
      std::vector<double> series;
      for (Date d = data.start_day(); d <= data.end_day(); d += std::chrono::days{1}) {
        if (adf_year != 0 && year_of(d) != adf_year) continue;
        series.push_back(data.value(d, adf_hour, col));
      }
      AdfResult res = adf_test(series, adf_max_lag,
                               adf_target + "@h" + std::to_string(adf_hour));
      std::cout << "series=" << res.series_id << " n=" << series.size()
                << " lag=" << res.lag_order << " statistic=" << res.statistic
                << " p_value=" << res.p_value
                << " reject_5pct=" << (res.reject_at_5pct ? "yes" : "no") << "\n";
    });

    auto* spur = diag->add_subcommand("spurious", "Noise-regressor selection paths");
    std::string sp_data = cfg("data", "data");
    std::string sp_horizons = cfg("horizons", "1,180");
    std::string sp_start = cfg("eval_start", "2018-06-01");
    std::string sp_end = cfg("eval_end", "2018-08-24");
    int sp_step = cfg_int("step_days", 7);
    int sp_hour = cfg_int("hour", 9);
    int sp_count = 4;
    std::uint64_t sp_seed = std::uint64_t(cfg_int("seed", 1));
    std::string sp_out = cfg("out", "");
    spur->add_option("--data", sp_data, "ingested data directory");
    spur->add_option("--horizons", sp_horizons, "horizons in days");
    spur->add_option("--eval-start", sp_start, "first target day");
    spur->add_option("--eval-end", sp_end, "last target day");
    spur->add_option("--step", sp_step, "target day stride");
    spur->add_option("--hour", sp_hour, "hour 1..24");
    spur->add_option("--count", sp_count, "noise columns per kind");
    spur->add_option("--seed", sp_seed, "rng seed");
    spur->add_option("--out", sp_out, "write CSV here instead of stdout");
    spur->callback([&] {
      HourlyDataset data = load_data_dir(sp_data);
      FuturesStore futures = load_futures_dir(sp_data);
      SeasonalBundle seasonal = load_seasonal_dir(sp_data);
      BacktestConfig config = make_backtest_config(
          "constr", sp_horizons, sp_start, sp_end, 1095, sp_step, 1, sp_seed,
          "table4", "");
      SpuriousResult res = spurious_experiment(config, data, futures, seasonal,
                                               sp_count, sp_seed, sp_hour);
      Table t;
      t.header = {"horizon"};
      for (const auto& c : res.columns) {
        t.header.push_back(c + "_freq");
        t.header.push_back(c + "_mean_abs");
      }
      for (size_t i = 0; i < res.horizons.size(); ++i) {
        std::vector<std::string> row{std::to_string(res.horizons[i])};
        for (long j = 0; j < res.selection_freq.cols(); ++j) {
          char f[32], m[32];
          std::snprintf(f, sizeof(f), "%.4f", res.selection_freq(long(i), j));
          std::snprintf(m, sizeof(m), "%.4f", res.mean_abs_scaled(long(i), j));
          row.push_back(f);
          row.push_back(m);
        }
        t.rows.push_back(std::move(row));
      }
      std::string text = render_delimited(t);
      if (sp_out.empty()) std::cout << text;
      else write_text_file(sp_out, text);
    });

    // report
    auto* report = app.add_subcommand("report", "Tables and SVG charts");
    report->require_subcommand(1);

    auto* rp_tab = report->add_subcommand("by-horizon", "models x horizons table");
    std::string rt_records = cfg("out", "records");
    std::string rt_metric = cfg("metric", "rmse");
    std::string rt_out = "reports";
    rp_tab->add_option("--records", rt_records, "record store directory");
    rp_tab->add_option("--metric", rt_metric, "rmse or mae");
    rp_tab->add_option("--out", rt_out, "output directory");
    rp_tab->callback([&] {
      Metric metric = rt_metric == "mae" ? Metric::mae : Metric::rmse;
      auto records = load_record_store(rt_records);
      auto metrics = compute_metrics(records, MetricsGrouping::overall);
      Table t = table_by_horizon(metrics, metric);
      fs::create_directories(rt_out);
      write_text_file(rt_out + "/table_by_horizon.csv", render_delimited(t));
      write_text_file(rt_out + "/table_by_horizon.svg",
                      svg_table_heatmap(t, rt_metric + " by model and horizon"));
      std::cout << render_delimited(t);
    });

    auto* rp_year = report->add_subcommand("by-year", "years x models table");
    std::string ry_records = cfg("out", "records");
    std::string ry_metric = cfg("metric", "rmse");
    int ry_horizon = 1;
    std::string ry_out = "reports";
    rp_year->add_option("--records", ry_records, "record store directory");
    rp_year->add_option("--metric", ry_metric, "rmse or mae");
    rp_year->add_option("--horizon", ry_horizon, "horizon in days")->required();
    rp_year->add_option("--out", ry_out, "output directory");
    rp_year->callback([&] {
      Metric metric = ry_metric == "mae" ? Metric::mae : Metric::rmse;
      auto records = load_record_store(ry_records);
      auto metrics = compute_metrics(records, MetricsGrouping::by_year);
      Table t = table_by_year(metrics, metric, ry_horizon);
      fs::create_directories(ry_out);
      std::string stem = ry_out + "/table_by_year_h" + std::to_string(ry_horizon);
      write_text_file(stem + ".csv", render_delimited(t));
      write_text_file(stem + ".svg", svg_table_heatmap(t, ry_metric + " by year"));
      std::cout << render_delimited(t);
    });

    auto* rp_dm = report->add_subcommand("dm-matrix", "pairwise DM p-value grid");
    std::string rd_records = cfg("out", "records");
    int rd_horizon = 1;
    std::string rd_out = "reports";
    rp_dm->add_option("--records", rd_records, "record store directory");
    rp_dm->add_option("--horizon", rd_horizon, "horizon in days")->required();
    rp_dm->add_option("--out", rd_out, "output directory");
    rp_dm->callback([&] {
      auto records = load_record_store(rd_records);
      std::map<std::string, std::vector<ForecastRecord>> by_model;
      for (const auto& r : records) {
        if (r.horizon == rd_horizon) by_model[r.model].push_back(r);
      }
      std::vector<DmResult> results;
      for (const auto& [a, ra] : by_model) {
        for (const auto& [b, rb] : by_model) {
          if (a == b) continue;
          try {
            results.push_back(dm_test(ra, rb, rd_horizon));
          } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateVariance) throw;
            // identical forecasts: report as no-difference
            DmResult res;
            res.model_a = a;
            res.model_b = b;
            res.horizon = rd_horizon;
            res.statistic = 0;
            res.p_value = 0.5;
            results.push_back(res);
          }
        }
      }
      Table t = table_dm_matrix(results, rd_horizon);
      fs::create_directories(rd_out);
      std::string stem = rd_out + "/dm_matrix_h" + std::to_string(rd_horizon);
      write_text_file(stem + ".csv", render_delimited(t));
      write_text_file(stem + ".svg",
                      svg_table_heatmap(t, "DM p-values (row beats column)"));
      std::cout << render_delimited(t);
    });

    auto* rp_comp = report->add_subcommand("components", "stacked forecast components");
    std::string rc_records = cfg("out", "records");
    std::string rc_model = "constr";
    int rc_horizon = 1;
    std::string rc_from;
    int rc_days = 14;
    std::string rc_out = "reports";
    rp_comp->add_option("--records", rc_records, "record store directory");
    rp_comp->add_option("--model", rc_model, "model name")->required();
    rp_comp->add_option("--horizon", rc_horizon, "horizon in days")->required();
    rp_comp->add_option("--from", rc_from, "first target day (default: earliest)");
    rp_comp->add_option("--days", rc_days, "number of target days");
    rp_comp->add_option("--out", rc_out, "output directory");
    rp_comp->callback([&] {
      auto records = load_record_store(rc_records);
      std::vector<ForecastRecord> picked;
      Date from{};
      bool have_from = !rc_from.empty();
      if (have_from) from = parse_date_arg(rc_from, "--from");
      for (const auto& r : records) {
        if (r.model != rc_model || r.horizon != rc_horizon || r.flagged) continue;
        if (!have_from) {
          from = r.target;
          have_from = true;
        }
        if (r.target >= from && (r.target - from).count() < rc_days) {
          picked.push_back(r);
        }
      }
      fs::create_directories(rc_out);
      std::string stem = rc_out + "/components_" + rc_model + "_h" +
                         std::to_string(rc_horizon);
      write_text_file(stem + ".svg",
                      svg_components(picked, rc_model + " forecast components"));
      std::cout << "wrote " << stem << ".svg (" << picked.size() << " records)\n";
    });

    auto* rp_coef = report->add_subcommand("coeff-paths", "scaled coefficients vs horizon");
    std::string cp_data = cfg("data", "data");
    std::string cp_model = "constr";
    std::string cp_origin;
    std::string cp_horizons = cfg("horizons", "1,7,14,30,60,90,180,360");
    int cp_hour = cfg_int("hour", 9);
    std::string cp_bounds = cfg("bounds_mode", "table4");
    std::string cp_out = "reports";
    rp_coef->add_option("--data", cp_data, "ingested data directory");
    rp_coef->add_option("--model", cp_model, "model name");
    rp_coef->add_option("--origin", cp_origin, "fit origin day")->required();
    rp_coef->add_option("--horizons", cp_horizons, "horizons in days");
    rp_coef->add_option("--hour", cp_hour, "hour 1..24");
    rp_coef->add_option("--bounds", cp_bounds, "table4 or appendixB");
    rp_coef->add_option("--out", cp_out, "output directory");
    rp_coef->callback([&] {
      HourlyDataset data = load_data_dir(cp_data);
      FuturesStore futures = load_futures_dir(cp_data);
      SeasonalBundle seasonal = load_seasonal_dir(cp_data);
      FitOptions options;
      options.bounds = derive_bounds(default_plants(), parse_bounds_mode(cp_bounds));
      CoefficientPathTable table = coefficient_path(
          find_model_spec(cp_model), data, futures, seasonal,
          parse_date_arg(cp_origin, "--origin"), parse_int_list(cp_horizons),
          cp_hour, options);
      fs::create_directories(cp_out);
      std::string stem = cp_out + "/coeff_paths_" + cp_model;
      Table t;
      t.header.push_back("horizon");
      for (const auto& r : table.regressors) t.header.push_back(r);
      for (size_t i = 0; i < table.horizons.size(); ++i) {
        std::vector<std::string> row{std::to_string(table.horizons[i])};
        for (long j = 0; j < table.coefficients.cols(); ++j) {
          char buf[32];
          std::snprintf(buf, sizeof(buf), "%.6f", table.coefficients(long(i), j));
          row.push_back(buf);
        }
        t.rows.push_back(std::move(row));
      }
      write_text_file(stem + ".csv", render_delimited(t));
      write_text_file(stem + ".svg",
                      svg_coefficient_paths(table, cp_model + " scaled coefficients"));
      std::cout << "wrote " << stem << ".csv and .svg\n";
    });

    // demo
    auto* demo = app.add_subcommand("demo", "End-to-end pipeline on synthetic data");
    std::string demo_out = cfg("out", "demo");
    std::uint64_t demo_seed = std::uint64_t(cfg_int("seed", 1));
    int demo_threads = cfg_int("threads", default_thread_count());
    demo->add_option("--out", demo_out, "output directory");
    demo->add_option("--seed", demo_seed, "rng seed");
    demo->add_option("--threads", demo_threads, "worker threads");
    demo->callback([&] { run_demo(demo_out, demo_seed, demo_threads); });

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      int code = app.exit(e);
      return code == 0 ? 0 : 1;  // user error, regardless of CLI11's code map
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Internal ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
