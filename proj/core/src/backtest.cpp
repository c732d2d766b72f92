#include "epf/backtest.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include "epf/csv.hpp"
#include "epf/error.hpp"

namespace epf {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, size_t len) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t fnv1a_double(std::uint64_t h, double v) {
  return fnv1a(h, &v, sizeof(v));
}

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;

bool record_order(const ForecastRecord& a, const ForecastRecord& b) {
  return std::tie(a.model, a.target, a.horizon, a.hour) <
         std::tie(b.model, b.target, b.horizon, b.hour);
}

}  // namespace

void BacktestConfig::validate() const {
  if (models.empty()) throw Error(ErrorCode::InvalidConfig, "no models selected");
  for (const auto& m : models) find_model_spec(m);
  if (horizons.empty()) throw Error(ErrorCode::InvalidConfig, "no horizons");
  int prev = 0;
  for (int h : horizons) {
    if (h <= prev) {
      throw Error(ErrorCode::InvalidConfig, "horizons must be positive ascending");
    }
    prev = h;
  }
  if (window_rows < 400) {
    throw Error(ErrorCode::InvalidConfig, "window_rows must be >= 400");
  }
  if (step_days < 1) throw Error(ErrorCode::InvalidConfig, "step_days must be >= 1");
  if (threads < 1) throw Error(ErrorCode::InvalidConfig, "threads must be >= 1");
  if (eval_end < eval_start) {
    throw Error(ErrorCode::InvalidConfig, "eval_end before eval_start");
  }
}

std::uint64_t hash_dataset(const HourlyDataset& data) {
  std::uint64_t h = kFnvOffset;
  long days = data.day_count();
  h = fnv1a(h, &days, sizeof(days));
  for (Date d = data.start_day(); d <= data.end_day(); d += std::chrono::days{1}) {
    for (int hr = 1; hr <= 24; ++hr) {
      for (int c = 0; c < kColumnCount; ++c) {
        h = fnv1a_double(h, data.value(d, hr, c));
      }
    }
  }
  return h;
}

std::uint64_t hash_futures(const FuturesStore& futures) {
  std::uint64_t h = kFnvOffset;
  for (const auto& q : futures.quotes()) {
    int d = int(q.quote_date.time_since_epoch().count());
    int c = int(q.commodity);
    h = fnv1a(h, &d, sizeof(d));
    h = fnv1a(h, &c, sizeof(c));
    h = fnv1a(h, &q.maturity_months, sizeof(q.maturity_months));
    h = fnv1a_double(h, q.settle);
  }
  return h;
}

namespace {

std::string config_snapshot(const BacktestConfig& c) {
  std::string s = "models=";
  for (size_t i = 0; i < c.models.size(); ++i) {
    if (i) s += ",";
    s += c.models[i];
  }
  s += "\nhorizons=";
  for (size_t i = 0; i < c.horizons.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c.horizons[i]);
  }
  s += "\neval_start=" + format_date(c.eval_start);
  s += "\neval_end=" + format_date(c.eval_end);
  s += "\nwindow_rows=" + std::to_string(c.window_rows);
  s += "\nstep_days=" + std::to_string(c.step_days);
  s += "\nseed=" + std::to_string(c.seed);
  s += "\nbounds_mode=" +
       std::string(c.bounds_mode == BoundsMode::table4 ? "table4" : "appendixB");
  s += "\nalpha=" + std::to_string(c.solver.alpha);
  return s;
}

struct WorkUnit {
  size_t model_index;
  Date target;
  int horizon;
};

}  // namespace

RecordStore run_backtest(const BacktestConfig& config, const HourlyDataset& data,
                         const FuturesStore& futures, const SeasonalBundle& seasonal) {
  config.validate();
  if (!data.contains(config.eval_start) || !data.contains(config.eval_end)) {
    throw Error(ErrorCode::InvalidConfig,
                "dataset does not cover the evaluation span");
  }
  auto t0 = std::chrono::steady_clock::now();

  std::vector<ModelSpec> specs;
  for (const auto& name : config.models) specs.push_back(find_model_spec(name));

  FitOptions options;
  options.bounds = derive_bounds(default_plants(), config.bounds_mode);
  options.solver = config.solver;
  options.window_rows = config.window_rows;

  std::vector<WorkUnit> work;
  for (size_t m = 0; m < specs.size(); ++m) {
    for (int h : config.horizons) {
      for (Date target = config.eval_start; target <= config.eval_end;
           target += std::chrono::days{config.step_days}) {
        work.push_back({m, target, h});
      }
    }
  }

  std::vector<std::vector<ForecastRecord>> results(work.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= work.size()) return;
      const WorkUnit& w = work[i];
      const ModelSpec& spec = specs[w.model_index];
      Date origin = w.target - std::chrono::days{w.horizon};
      std::vector<ForecastRecord> recs;
      if (spec.naive) {
        for (int hour = 1; hour <= 24; ++hour) {
          ForecastRecord r;
          r.model = spec.name;
          r.origin = origin;
          r.target = w.target;
          r.horizon = w.horizon;
          r.hour = hour;
          try {
            r.prediction = naive_forecast(data, origin, w.horizon, hour);
          } catch (const Error& e) {
            r.flagged = true;
            r.flag = e.what();
          }
          recs.push_back(std::move(r));
        }
      } else {
        try {
          DailyFit fit =
              fit_daily(spec, data, futures, seasonal, origin, w.horizon, options);
          recs = forecast_daily(fit);
        } catch (const Error& e) {
          for (int hour = 1; hour <= 24; ++hour) {
            ForecastRecord r;
            r.model = spec.name;
            r.origin = origin;
            r.target = w.target;
            r.horizon = w.horizon;
            r.hour = hour;
            r.flagged = true;
            r.flag = e.what();
            recs.push_back(std::move(r));
          }
        }
      }
      for (auto& r : recs) {
        if (data.contains(r.target)) r.actual = data.price(r.target, r.hour);
      }
      results[i] = std::move(recs);
    }
  };

  int nthreads = std::min<int>(config.threads, int(work.size()) > 0 ? config.threads : 1);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  RecordStore store;
  for (auto& recs : results) {
    for (auto& r : recs) store.records.push_back(std::move(r));
  }
  std::sort(store.records.begin(), store.records.end(), record_order);

  store.manifest.config_text = config_snapshot(config);
  store.manifest.dataset_hash = hash_dataset(data);
  store.manifest.futures_hash = hash_futures(futures);
  store.manifest.record_count = long(store.records.size());
  for (const auto& r : store.records) {
    if (r.flagged) ++store.manifest.flagged_count;
  }
  store.manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return store;
}

namespace {

const char* kRecordHeader =
    "model,origin,target,horizon,hour,prediction,actual,intercept,"
    "comp_calendar_week,comp_calendar_season,comp_autoreg,comp_res_load,"
    "comp_fuels,comp_noise,flagged,flag,nonconverged";

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

void write_record(std::ofstream& out, const ForecastRecord& r) {
  char buf[64];
  out << r.model << "," << format_date(r.origin) << "," << format_date(r.target)
      << "," << r.horizon << "," << r.hour;
  for (double v : {r.prediction, r.actual, r.intercept}) {
    std::snprintf(buf, sizeof(buf), ",%.17g", v);
    out << buf;
  }
  for (double v : r.components) {
    std::snprintf(buf, sizeof(buf), ",%.17g", v);
    out << buf;
  }
  out << "," << (r.flagged ? 1 : 0) << "," << sanitize(r.flag) << ","
      << (r.nonconverged ? 1 : 0) << "\n";
}

}  // namespace

void save_record_store(const RecordStore& store, const std::string& dir) {
  std::filesystem::create_directories(dir);
  // shard by (model, horizon); records are already sorted
  std::map<std::pair<std::string, int>, std::ofstream> shards;
  for (const auto& r : store.records) {
    auto key = std::make_pair(r.model, r.horizon);
    auto it = shards.find(key);
    if (it == shards.end()) {
      std::string path =
          dir + "/records_" + r.model + "_h" + std::to_string(r.horizon) + ".csv";
      auto [ins, ok] = shards.emplace(key, std::ofstream(path));
      if (!ins->second) throw Error(ErrorCode::Internal, "cannot write " + path);
      ins->second << kRecordHeader << "\n";
      it = ins;
    }
    write_record(it->second, r);
  }
  std::ofstream man(dir + "/manifest.json");
  if (!man) throw Error(ErrorCode::Internal, "cannot write manifest");
  man << "{\n";
  man << "  \"record_count\": " << store.manifest.record_count << ",\n";
  man << "  \"flagged_count\": " << store.manifest.flagged_count << ",\n";
  man << "  \"dataset_hash\": \"" << std::hex << store.manifest.dataset_hash
      << "\",\n";
  man << "  \"futures_hash\": \"" << store.manifest.futures_hash << std::dec
      << "\",\n";
  man << "  \"wall_seconds\": " << store.manifest.wall_seconds << ",\n";
  man << "  \"config\": \"" << sanitize(store.manifest.config_text) << "\"\n";
  man << "}\n";
}

std::vector<ForecastRecord> load_record_shard(const std::string& path) {
  CsvReader reader(path);
  std::vector<std::string> fields;
  std::vector<ForecastRecord> out;
  while (reader.next(fields)) {
    if (fields.size() != 17) {
      throw Error(ErrorCode::MalformedRow, path + ": bad record row");
    }
    ForecastRecord r;
    r.model = fields[0];
    r.origin = parse_date(fields[1]);
    r.target = parse_date(fields[2]);
    r.horizon = std::stoi(fields[3]);
    r.hour = std::stoi(fields[4]);
    r.prediction = std::stod(fields[5]);
    r.actual = std::stod(fields[6]);
    r.intercept = std::stod(fields[7]);
    for (int c = 0; c < kRegressorGroupCount; ++c) {
      r.components[size_t(c)] = std::stod(fields[size_t(8 + c)]);
    }
    r.flagged = fields[14] == "1";
    r.flag = fields[15];
    r.nonconverged = fields[16] == "1";
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ForecastRecord> load_record_store(const std::string& dir) {
  std::vector<std::string> paths;
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::EmptyInput, "no record store at " + dir);
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (name.rfind("records_", 0) == 0 && entry.path().extension() == ".csv") {
      paths.push_back(entry.path().string());
    }
  }
  if (paths.empty()) throw Error(ErrorCode::EmptyInput, "no record shards in " + dir);
  std::sort(paths.begin(), paths.end());
  std::vector<ForecastRecord> out;
  for (const auto& p : paths) {
    auto recs = load_record_shard(p);
    out.insert(out.end(), recs.begin(), recs.end());
  }
  std::sort(out.begin(), out.end(), record_order);
  return out;
}

SpuriousResult spurious_experiment(const BacktestConfig& config,
                                   const HourlyDataset& data,
                                   const FuturesStore& futures,
                                   const SeasonalBundle& seasonal, int noise_count,
                                   std::uint64_t seed, int hour) {
  config.validate();
  const ModelSpec& constr = find_model_spec("constr");
  FitOptions options;
  options.bounds = derive_bounds(default_plants(), config.bounds_mode);
  options.solver = config.solver;
  options.window_rows = config.window_rows;

  SpuriousResult res;
  res.horizons = config.horizons;
  res.hour = hour;
  const int ncols = 2 * noise_count;
  res.selection_freq = Eigen::MatrixXd::Zero(long(config.horizons.size()), ncols);
  res.mean_abs_scaled = Eigen::MatrixXd::Zero(long(config.horizons.size()), ncols);

  for (size_t hi = 0; hi < config.horizons.size(); ++hi) {
    int h = config.horizons[hi];
    long fits = 0;
    for (Date target = config.eval_start; target <= config.eval_end;
         target += std::chrono::days{config.step_days}) {
      Date origin = target - std::chrono::days{h};
      AssembledDesign ad = assemble_design(data, futures, seasonal, constr, origin, h,
                                           hour, config.window_rows, options.bounds);
      long base = ad.design.X.cols();
      add_noise_regressors(ad, noise_count, NoiseKind::brownian, seed);
      add_noise_regressors(ad, noise_count, NoiseKind::white, seed);
      if (res.columns.empty()) {
        for (size_t j = size_t(base); j < ad.design.columns.size(); ++j) {
          res.columns.push_back(ad.design.columns[j].name);
        }
      }
      std::vector<Interval> box(ad.design.columns.size());
      for (size_t j = 0; j < box.size(); ++j) box[j] = ad.design.columns[j].bound;
      FitResult fit = fit_elastic_net(ad.design.X, ad.design.y, box, options.solver);
      for (int c = 0; c < ncols; ++c) {
        double v = std::abs(fit.coefficients_scaled(base + c));
        if (v > 0.01) res.selection_freq(long(hi), c) += 1.0;
        res.mean_abs_scaled(long(hi), c) += v;
      }
      ++fits;
    }
    if (fits > 0) {
      res.selection_freq.row(long(hi)) /= double(fits);
      res.mean_abs_scaled.row(long(hi)) /= double(fits);
    }
    res.fits_per_horizon = fits;
  }
  return res;
}

}  // namespace epf
