#pragma once

#include <array>
#include <string>
#include <vector>

#include "epf/dates.hpp"

namespace epf {

enum class TzMode { local, utc };

// Raw numeric columns as they appear in hourly.csv, price first.
enum HourlyColumn : int {
  kPrice = 0,
  kLoadActual,
  kLoadDaFc,
  kSolarActual,
  kSolarDaFc,
  kWindOnActual,
  kWindOnDaFc,
  kWindOffActual,
  kWindOffDaFc,
  kRawColumnCount,
  // materialized at ingestion: solar + onshore wind + offshore wind
  kResActual = kRawColumnCount,
  kResDaFc,
  kColumnCount,
};

struct HourlyRecord {
  Date local_day;
  int hour = 0;  // 1..24
  std::array<double, kRawColumnCount> values{};
  std::array<bool, kRawColumnCount> missing{};
  bool dst_duplicate = false;
  int line = 0;
};

struct AdjustmentCounts {
  int spring_interpolated_hours = 0;
  int autumn_averaged_hours = 0;
  int gap_interpolated_cells = 0;
};

// Dense hourly grid, exactly 24 rows per day between start_day and end_day.
class HourlyDataset {
 public:
  HourlyDataset() = default;
  HourlyDataset(Date start_day, Date end_day);

  Date start_day() const { return start_; }
  Date end_day() const { return end_; }
  long day_count() const;
  bool contains(Date day) const { return day >= start_ && day <= end_; }

  double value(Date day, int hour, int column) const;
  void set_value(Date day, int hour, int column, double v);

  double price(Date day, int hour) const { return value(day, hour, kPrice); }

  const AdjustmentCounts& adjustments() const { return adjustments_; }
  AdjustmentCounts& adjustments() { return adjustments_; }

 private:
  long index(Date day, int hour) const;
  Date start_{}, end_{};
  std::vector<std::array<double, kColumnCount>> rows_;
  AdjustmentCounts adjustments_;
};

std::vector<HourlyRecord> parse_hourly_csv(const std::string& path, TzMode tz_mode);
HourlyDataset adjust_clock_change(std::vector<HourlyRecord> raw);

void save_hourly_dataset(const HourlyDataset& data, const std::string& path);
HourlyDataset load_hourly_dataset(const std::string& path);

void write_ingest_manifest(const std::string& path, const HourlyDataset& data,
                           TzMode tz_mode);

}  // namespace epf
