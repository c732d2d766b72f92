#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epf/features.hpp"
#include "epf/models.hpp"

namespace epf {

struct BacktestConfig {
  std::vector<std::string> models;
  std::vector<int> horizons = {1,   7,   14,  30,  60,  90,  120, 150,
                               180, 210, 240, 270, 300, 330, 360};
  Date eval_start{};
  Date eval_end{};
  int window_rows = 365 * 3;
  int step_days = 1;
  std::uint64_t seed = 1;
  int threads = 1;
  BoundsMode bounds_mode = BoundsMode::table4;
  SolverConfig solver;
  std::string out_dir;

  void validate() const;
};

struct RunManifest {
  std::string config_text;
  std::uint64_t dataset_hash = 0;
  std::uint64_t futures_hash = 0;
  long record_count = 0;
  long flagged_count = 0;
  double wall_seconds = 0;
};

struct RecordStore {
  std::vector<ForecastRecord> records;  // sorted by (model, target, horizon, hour)
  RunManifest manifest;
};

std::uint64_t hash_dataset(const HourlyDataset& data);
std::uint64_t hash_futures(const FuturesStore& futures);

RecordStore run_backtest(const BacktestConfig& config, const HourlyDataset& data,
                         const FuturesStore& futures, const SeasonalBundle& seasonal);

// Shards records_<model>_h<h>.csv plus manifest.json under dir.
void save_record_store(const RecordStore& store, const std::string& dir);
std::vector<ForecastRecord> load_record_shard(const std::string& path);
std::vector<ForecastRecord> load_record_store(const std::string& dir);

struct SpuriousResult {
  std::vector<int> horizons;
  std::vector<std::string> columns;  // noise regressors
  Eigen::MatrixXd selection_freq;    // horizons x columns, |scaled coef| > 0.01
  Eigen::MatrixXd mean_abs_scaled;   // horizons x columns
  int hour = 0;
  long fits_per_horizon = 0;
};

// Constr spec with seeded noise regressors across the horizon grid, hour fixed.
SpuriousResult spurious_experiment(const BacktestConfig& config,
                                   const HourlyDataset& data,
                                   const FuturesStore& futures,
                                   const SeasonalBundle& seasonal, int noise_count,
                                   std::uint64_t seed, int hour);

}  // namespace epf
