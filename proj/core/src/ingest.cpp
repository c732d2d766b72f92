#include "epf/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>

#include "epf/csv.hpp"
#include "epf/error.hpp"

namespace epf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> kHourlyHeader = {
    "timestamp",        "price_eur_mwh",   "load_actual_mw",
    "load_da_fc_mw",    "solar_actual_mw", "solar_da_fc_mw",
    "wind_on_actual_mw", "wind_on_da_fc_mw", "wind_off_actual_mw",
    "wind_off_da_fc_mw"};

double parse_double(const std::string& s, const std::string& ctx) {
  size_t used = 0;
  double v;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::MalformedRow, ctx + ": bad number '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorCode::MalformedRow, ctx + ": bad number '" + s + "'");
  return v;
}

// Accepts "YYYY-MM-DDTHH:MM" with an optional trailing offset/Z suffix.
void parse_timestamp(const std::string& ts, const std::string& ctx, Date& day,
                     int& clock_hour) {
  int y = 0, hh = 0, mm = 0;
  unsigned mo = 0, dd = 0;
  if (std::sscanf(ts.c_str(), "%d-%u-%uT%d:%d", &y, &mo, &dd, &hh, &mm) != 5 ||
      mo < 1 || mo > 12 || dd < 1 || dd > 31 || hh < 0 || hh > 23 || mm != 0) {
    throw Error(ErrorCode::MalformedRow, ctx + ": bad timestamp '" + ts + "'");
  }
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{mo},
                                  std::chrono::day{dd}};
  if (!ymd.ok()) throw Error(ErrorCode::MalformedRow, ctx + ": bad timestamp '" + ts + "'");
  day = std::chrono::sys_days(ymd);
  clock_hour = hh;
}

}  // namespace

HourlyDataset::HourlyDataset(Date start_day, Date end_day)
    : start_(start_day), end_(end_day) {
  if (end_ < start_) throw Error(ErrorCode::Internal, "end before start");
  rows_.resize(size_t(day_count()) * 24);
  for (auto& r : rows_) r.fill(kNaN);
}

long HourlyDataset::day_count() const { return (end_ - start_).count() + 1; }

long HourlyDataset::index(Date day, int hour) const {
  if (day < start_ || day > end_ || hour < 1 || hour > 24) {
    throw Error(ErrorCode::MissingData,
                "out of range: " + format_date(day) + " h" + std::to_string(hour));
  }
  return (day - start_).count() * 24 + hour - 1;
}

double HourlyDataset::value(Date day, int hour, int column) const {
  return rows_[size_t(index(day, hour))][size_t(column)];
}

void HourlyDataset::set_value(Date day, int hour, int column, double v) {
  rows_[size_t(index(day, hour))][size_t(column)] = v;
}

std::vector<HourlyRecord> parse_hourly_csv(const std::string& path, TzMode tz_mode) {
  CsvReader reader(path);
  require_header(reader, kHourlyHeader, path);

  std::vector<HourlyRecord> out;
  std::map<std::pair<Date, int>, size_t> seen;
  std::vector<std::string> fields;
  while (reader.next(fields)) {
    std::string ctx = path + ":" + std::to_string(reader.line_number());
    Date day;
    int clock_hour;
    parse_timestamp(fields[0], ctx, day, clock_hour);

    HourlyRecord rec;
    if (tz_mode == TzMode::utc) {
      LocalHour lh = utc_to_local(day, clock_hour);
      rec.local_day = lh.day;
      rec.hour = lh.hour;
    } else {
      rec.local_day = day;
      rec.hour = clock_hour + 1;
    }
    rec.line = reader.line_number();
    for (int c = 0; c < kRawColumnCount; ++c) {
      const std::string& f = fields[size_t(c) + 1];
      if (f.empty()) {
        if (c == kPrice) throw Error(ErrorCode::MissingData, ctx + ": missing price");
        rec.missing[size_t(c)] = true;
        rec.values[size_t(c)] = kNaN;
      } else {
        rec.values[size_t(c)] = parse_double(f, ctx);
      }
    }
    if (rec.values[kLoadActual] < 0 && !rec.missing[kLoadActual]) {
      throw Error(ErrorCode::MalformedRow, ctx + ": negative load");
    }

    auto key = std::make_pair(rec.local_day, rec.hour);
    auto it = seen.find(key);
    if (it != seen.end()) {
      if (!is_autumn_transition_day(rec.local_day)) {
        throw Error(ErrorCode::DuplicateRow,
                    ctx + ": duplicate " + format_date(rec.local_day) + " h" +
                        std::to_string(rec.hour));
      }
      out[it->second].dst_duplicate = true;
      rec.dst_duplicate = true;
    } else {
      seen[key] = out.size();
    }
    out.push_back(rec);
  }
  if (out.empty()) throw Error(ErrorCode::EmptyInput, path + " has no data rows");
  return out;
}

namespace {

// Interpolates gaps of up to `max_gap` NaN cells in a column; longer gaps
// (or gaps touching the series boundary) are an error for that column.
void fill_column_gaps(std::vector<double>& col, int max_gap, const char* name,
                      AdjustmentCounts& counts) {
  size_t n = col.size();
  for (size_t i = 0; i < n; ++i) {
    if (!std::isnan(col[i])) continue;
    size_t j = i;
    while (j < n && std::isnan(col[j])) ++j;
    size_t gap = j - i;
    if (i == 0 || j == n || gap > size_t(max_gap)) {
      throw Error(ErrorCode::MissingData,
                  std::string(name) + ": gap of " + std::to_string(gap) +
                      " hours cannot be interpolated");
    }
    double lo = col[i - 1], hi = col[j];
    for (size_t k = i; k < j; ++k) {
      double w = double(k - i + 1) / double(gap + 1);
      col[k] = lo + (hi - lo) * w;
      ++counts.gap_interpolated_cells;
    }
    i = j;
  }
}

}  // namespace

HourlyDataset adjust_clock_change(std::vector<HourlyRecord> raw) {
  if (raw.empty()) throw Error(ErrorCode::EmptyInput, "no records");

  Date start = raw[0].local_day, end = raw[0].local_day;
  for (const auto& r : raw) {
    start = std::min(start, r.local_day);
    end = std::max(end, r.local_day);
  }

  // Collect per (day, hour): list of records. Flag non-DST duplicates.
  long days = (end - start).count() + 1;
  std::vector<std::vector<const HourlyRecord*>> cells(size_t(days) * 24);
  for (const auto& r : raw) {
    if (r.hour < 1 || r.hour > 24) {
      throw Error(ErrorCode::MalformedRow, "hour out of range on line " + std::to_string(r.line));
    }
    cells[size_t((r.local_day - start).count() * 24 + r.hour - 1)].push_back(&r);
  }

  AdjustmentCounts counts;
  // Column-major working buffers over the full grid, NaN = absent.
  std::vector<std::vector<double>> cols(kRawColumnCount,
                                        std::vector<double>(cells.size(), kNaN));

  for (long d = 0; d < days; ++d) {
    Date day = start + std::chrono::days{d};
    int missing_hours = 0;
    for (int h = 1; h <= 24; ++h) {
      auto& cell = cells[size_t(d * 24 + h - 1)];
      if (cell.empty()) {
        ++missing_hours;
        continue;
      }
      if (cell.size() > 2 || (cell.size() == 2 && !is_autumn_transition_day(day))) {
        throw Error(ErrorCode::DuplicateRow,
                    "duplicate rows for " + format_date(day) + " h" + std::to_string(h));
      }
      for (int c = 0; c < kRawColumnCount; ++c) {
        if (cell.size() == 2) {
          // autumn repeated hour: arithmetic mean per column
          double a = cell[0]->values[size_t(c)], b = cell[1]->values[size_t(c)];
          cols[size_t(c)][size_t(d * 24 + h - 1)] =
              (std::isnan(a) || std::isnan(b)) ? kNaN : 0.5 * (a + b);
          if (c == 0) ++counts.autumn_averaged_hours;
        } else {
          cols[size_t(c)][size_t(d * 24 + h - 1)] = cell[0]->values[size_t(c)];
        }
      }
    }
    if (missing_hours > 1) {
      throw Error(ErrorCode::MissingData,
                  format_date(day) + " is missing " + std::to_string(missing_hours) + " hours");
    }
    if (missing_hours == 1) {
      if (!is_spring_transition_day(day)) {
        throw Error(ErrorCode::MissingData,
                    format_date(day) + " is missing an hour outside the spring transition");
      }
      ++counts.spring_interpolated_hours;
      // the price gap is filled below together with other columns
    }
  }

  // Spring-missing price allows a 1-hour gap; other columns up to 3 hours.
  fill_column_gaps(cols[kPrice], 1, "price", counts);
  counts.gap_interpolated_cells = 0;  // price fills are counted as spring hours
  for (int c = 1; c < kRawColumnCount; ++c) {
    fill_column_gaps(cols[size_t(c)], 3, kHourlyHeader[size_t(c) + 1].c_str(), counts);
  }

  HourlyDataset out(start, end);
  for (long d = 0; d < days; ++d) {
    Date day = start + std::chrono::days{d};
    for (int h = 1; h <= 24; ++h) {
      size_t i = size_t(d * 24 + h - 1);
      for (int c = 0; c < kRawColumnCount; ++c) out.set_value(day, h, c, cols[size_t(c)][i]);
      out.set_value(day, h, kResActual,
                    cols[kSolarActual][i] + cols[kWindOnActual][i] + cols[kWindOffActual][i]);
      out.set_value(day, h, kResDaFc,
                    cols[kSolarDaFc][i] + cols[kWindOnDaFc][i] + cols[kWindOffDaFc][i]);
    }
  }
  out.adjustments() = counts;
  return out;
}

void save_hourly_dataset(const HourlyDataset& data, const std::string& path) {
  std::ofstream outfile(path);
  if (!outfile) throw Error(ErrorCode::Internal, "cannot write " + path);
  outfile << "local_day,hour";
  for (size_t c = 1; c < kHourlyHeader.size(); ++c) outfile << "," << kHourlyHeader[c];
  outfile << ",res_actual_mw,res_da_fc_mw\n";
  char buf[32];
  for (Date day = data.start_day(); day <= data.end_day(); day += std::chrono::days{1}) {
    for (int h = 1; h <= 24; ++h) {
      outfile << format_date(day) << "," << h;
      for (int c = 0; c < kColumnCount; ++c) {
        std::snprintf(buf, sizeof(buf), "%.17g", data.value(day, h, c));
        outfile << "," << buf;
      }
      outfile << "\n";
    }
  }
}

HourlyDataset load_hourly_dataset(const std::string& path) {
  CsvReader reader(path);
  if (reader.header().size() != size_t(kColumnCount) + 2) {
    throw Error(ErrorCode::UnknownColumn, path + ": unexpected processed header");
  }
  std::vector<std::string> fields;
  struct Row {
    Date day;
    int hour;
    std::array<double, kColumnCount> v;
  };
  std::vector<Row> rows;
  while (reader.next(fields)) {
    Row r;
    r.day = parse_date(fields[0]);
    r.hour = std::stoi(fields[1]);
    for (int c = 0; c < kColumnCount; ++c) {
      r.v[size_t(c)] = parse_double(fields[size_t(c) + 2], path);
    }
    rows.push_back(r);
  }
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, path);
  Date start = rows.front().day, end = rows.back().day;
  HourlyDataset out(start, end);
  for (const auto& r : rows) {
    for (int c = 0; c < kColumnCount; ++c) out.set_value(r.day, r.hour, c, r.v[size_t(c)]);
  }
  return out;
}

void write_ingest_manifest(const std::string& path, const HourlyDataset& data,
                           TzMode tz_mode) {
  std::ofstream outfile(path);
  if (!outfile) throw Error(ErrorCode::Internal, "cannot write " + path);
  const auto& a = data.adjustments();
  outfile << "{\n"
          << "  \"start_day\": \"" << format_date(data.start_day()) << "\",\n"
          << "  \"end_day\": \"" << format_date(data.end_day()) << "\",\n"
          << "  \"tz_mode\": \"" << (tz_mode == TzMode::utc ? "utc" : "local") << "\",\n"
          << "  \"spring_interpolated_hours\": " << a.spring_interpolated_hours << ",\n"
          << "  \"autumn_averaged_hours\": " << a.autumn_averaged_hours << ",\n"
          << "  \"gap_interpolated_cells\": " << a.gap_interpolated_cells << "\n"
          << "}\n";
}

}  // namespace epf
