#include <cmath>
#include <cstdio>
#include <sstream>

#include "doctest.h"
#include "epf/error.hpp"
#include "epf/ingest.hpp"
#include "test_util.hpp"

using namespace epf;

namespace {

const char* kHeader =
    "timestamp,price_eur_mwh,load_actual_mw,load_da_fc_mw,solar_actual_mw,"
    "solar_da_fc_mw,wind_on_actual_mw,wind_on_da_fc_mw,wind_off_actual_mw,"
    "wind_off_da_fc_mw\n";

std::string row(const std::string& ts, double price) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s,%g,50000,49000,1000,1100,2000,2100,500,550\n",
                ts.c_str(), price);
  return buf;
}

// 24 local-time rows for one date, price = base + clock hour, skipping any
// clock hour listed in `skip`.
std::string full_day(const std::string& date, double base, int skip = -1) {
  std::string out;
  for (int h = 0; h < 24; ++h) {
    if (h == skip) continue;
    char ts[32];
    std::snprintf(ts, sizeof(ts), "%sT%02d:00", date.c_str(), h);
    out += row(ts, base + h);
  }
  return out;
}

std::vector<HourlyRecord> parse_text(const std::string& tag, const std::string& body,
                                     TzMode mode = TzMode::local) {
  auto dir = epf_test::temp_dir("ingest_" + tag);
  epf_test::write_file(dir / "h.csv", std::string(kHeader) + body);
  return parse_hourly_csv((dir / "h.csv").string(), mode);
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("local timestamp maps clock hour h to hour index h+1") {
  auto recs = parse_text("local", row("2024-01-15T08:00+01:00", 75.2));
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].local_day == make_date(2024, 1, 15));
  CHECK(recs[0].hour == 9);
  CHECK(recs[0].values[kPrice] == doctest::Approx(75.2));
}

TEST_CASE("utc mode converts before day and hour assignment") {
  auto recs = parse_text("utc", row("2024-01-15T23:00Z", 10.0), TzMode::utc);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].local_day == make_date(2024, 1, 16));
  CHECK(recs[0].hour == 1);
}

TEST_CASE("empty file is EmptyInput") {
  auto dir = epf_test::temp_dir("ingest_empty");
  epf_test::write_file(dir / "h.csv", "");
  try {
    parse_hourly_csv((dir / "h.csv").string(), TzMode::local);
    FAIL("expected EmptyInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyInput);
  }
  // Header-only files carry no data rows either.
  epf_test::write_file(dir / "h2.csv", kHeader);
  try {
    parse_hourly_csv((dir / "h2.csv").string(), TzMode::local);
    FAIL("expected EmptyInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyInput);
  }
}

TEST_CASE("malformed rows report the line number") {
  try {
    parse_text("malformed", row("2024-01-15T08:00", 5) +
                                "2024-01-15T09:00,notanumber,1,1,1,1,1,1,1,1\n");
    FAIL("expected MalformedRow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedRow);
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
}

TEST_CASE("unknown column is rejected") {
  auto dir = epf_test::temp_dir("ingest_cols");
  epf_test::write_file(dir / "h.csv", "timestamp,price_eur_mwh,bogus\n1,2,3\n");
  try {
    parse_hourly_csv((dir / "h.csv").string(), TzMode::local);
    FAIL("expected UnknownColumn");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownColumn);
  }
}

TEST_CASE("autumn duplicate hour is retained and flagged, others rejected") {
  // 2023-10-29 is the autumn transition; local clock 02 repeats (hour 3).
  auto recs = parse_text("dup", row("2023-10-29T02:00+02:00", 30) +
                                    row("2023-10-29T02:00+01:00", 50));
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].dst_duplicate);
  CHECK(recs[1].dst_duplicate);
  CHECK(recs[0].hour == 3);

  try {
    parse_text("dup_bad", row("2023-06-01T02:00", 30) + row("2023-06-01T02:00", 50));
    FAIL("expected DuplicateRow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateRow);
  }
}

TEST_CASE("spring missing hour is midpoint-interpolated per column") {
  // 2024-03-31 is the spring transition; local clock 02 (hour index 3) absent.
  auto recs = parse_text("spring", full_day("2024-03-31", 100, /*skip=*/2));
  REQUIRE(recs.size() == 23);
  auto data = adjust_clock_change(recs);
  CHECK(data.price(make_date(2024, 3, 31), 2) == doctest::Approx(101));
  CHECK(data.price(make_date(2024, 3, 31), 4) == doctest::Approx(103));
  // price(h3) = midpoint of neighbours 101 and 103
  CHECK(data.price(make_date(2024, 3, 31), 3) == doctest::Approx(102));
  // non-price columns are constant, so interpolation reproduces the constant
  CHECK(data.value(make_date(2024, 3, 31), 3, kLoadActual) == doctest::Approx(50000));
  CHECK(data.adjustments().spring_interpolated_hours == 1);
}

TEST_CASE("autumn duplicated hour is replaced by the arithmetic mean") {
  std::string body;
  for (int h = 0; h < 24; ++h) {
    char ts[32];
    std::snprintf(ts, sizeof(ts), "2023-10-29T%02d:00", h);
    body += row(ts, 10.0 + h);
    if (h == 2) body += row(ts, 50.0);  // repeated clock hour, prices 12 and 50
  }
  auto data = adjust_clock_change(parse_text("autumn", body));
  CHECK(data.price(make_date(2023, 10, 29), 3) == doctest::Approx(0.5 * (12 + 50)));
  CHECK(data.adjustments().autumn_averaged_hours == 1);
}

TEST_CASE("a complete non-transition day passes through unchanged") {
  auto data = adjust_clock_change(parse_text("plain", full_day("2024-02-10", 0)));
  for (int h = 1; h <= 24; ++h) {
    CHECK(data.price(make_date(2024, 2, 10), h) == doctest::Approx(h - 1));
  }
  CHECK(data.adjustments().spring_interpolated_hours == 0);
  CHECK(data.adjustments().autumn_averaged_hours == 0);
}

TEST_CASE("more than one missing hour on a day is MissingData") {
  std::string body;
  for (int h = 0; h < 24; ++h) {
    if (h == 5 || h == 9) continue;
    char ts[32];
    std::snprintf(ts, sizeof(ts), "2024-02-10T%02d:00", h);
    body += row(ts, 1.0);
  }
  try {
    adjust_clock_change(parse_text("gap2", body));
    FAIL("expected MissingData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingData);
  }
  // A missing hour outside the spring transition is also rejected.
  try {
    adjust_clock_change(parse_text("gap1", full_day("2024-02-10", 0, /*skip=*/7)));
    FAIL("expected MissingData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingData);
  }
}

TEST_CASE("short gaps in non-price columns are interpolated, long gaps fail") {
  std::string body;
  for (int h = 0; h < 24; ++h) {
    char ts[32], line[256];
    std::snprintf(ts, sizeof(ts), "2024-02-10T%02d:00", h);
    if (h >= 4 && h <= 6) {
      // 3-hour load gap between 40000 (h=3) and 48000 (h=7)
      std::snprintf(line, sizeof(line), "%s,5,,49000,1000,1100,2000,2100,500,550\n", ts);
    } else {
      std::snprintf(line, sizeof(line), "%s,5,%d,49000,1000,1100,2000,2100,500,550\n",
                    ts, h < 4 ? 40000 : 48000);
    }
    body += line;
  }
  auto data = adjust_clock_change(parse_text("colgap", body));
  CHECK(data.value(make_date(2024, 2, 10), 5, kLoadActual) == doctest::Approx(42000));
  CHECK(data.value(make_date(2024, 2, 10), 6, kLoadActual) == doctest::Approx(44000));
  CHECK(data.adjustments().gap_interpolated_cells == 3);

  // 4 consecutive missing hours exceed the interpolation allowance.
  std::string bad;
  for (int h = 0; h < 24; ++h) {
    char ts[32], line[256];
    std::snprintf(ts, sizeof(ts), "2024-02-10T%02d:00", h);
    if (h >= 4 && h <= 7) {
      std::snprintf(line, sizeof(line), "%s,5,,49000,1000,1100,2000,2100,500,550\n", ts);
    } else {
      std::snprintf(line, sizeof(line), "%s,5,40000,49000,1000,1100,2000,2100,500,550\n", ts);
    }
    bad += line;
  }
  try {
    adjust_clock_change(parse_text("colgap_bad", bad));
    FAIL("expected MissingData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingData);
  }
}

TEST_CASE("RES is materialized as solar + onshore + offshore") {
  auto data = adjust_clock_change(parse_text("res", full_day("2024-02-10", 0)));
  CHECK(data.value(make_date(2024, 2, 10), 5, kResActual) ==
        doctest::Approx(1000 + 2000 + 500));
  CHECK(data.value(make_date(2024, 2, 10), 5, kResDaFc) ==
        doctest::Approx(1100 + 2100 + 550));
}

TEST_CASE("adjusted dataset round-trips bit-exactly through serialization") {
  auto data = adjust_clock_change(
      parse_text("rt", full_day("2024-03-30", 17.25) +
                           full_day("2024-03-31", -3.5, /*skip=*/2) +
                           full_day("2024-04-01", 0.125)));
  auto dir = epf_test::temp_dir("ingest_rt_io");
  save_hourly_dataset(data, (dir / "d.csv").string());
  auto back = load_hourly_dataset((dir / "d.csv").string());
  REQUIRE(back.start_day() == data.start_day());
  REQUIRE(back.end_day() == data.end_day());
  for (Date d = data.start_day(); d <= data.end_day(); d += std::chrono::days{1}) {
    for (int h = 1; h <= 24; ++h) {
      for (int c = 0; c < kColumnCount; ++c) {
        CHECK(back.value(d, h, c) == data.value(d, h, c));  // bit-exact
      }
    }
  }
}

TEST_CASE("adjusted grid is dense: 24 hours for every covered day") {
  auto data = adjust_clock_change(
      parse_text("dense", full_day("2024-02-10", 0) + full_day("2024-02-11", 1)));
  CHECK(data.day_count() == 2);
  for (Date d = data.start_day(); d <= data.end_day(); d += std::chrono::days{1}) {
    for (int h = 1; h <= 24; ++h) {
      CHECK_FALSE(std::isnan(data.price(d, h)));
    }
  }
  CHECK_THROWS_AS(data.price(make_date(2024, 2, 12), 1), Error);
  CHECK_THROWS_AS(data.price(make_date(2024, 2, 10), 25), Error);
}

}  // TEST_SUITE
