#include "doctest.h"
#include "epf/dates.hpp"
#include "epf/error.hpp"

using namespace epf;

TEST_SUITE("dates") {

TEST_CASE("format and parse round-trip") {
  Date d = make_date(2024, 1, 15);
  CHECK(format_date(d) == "2024-01-15");
  CHECK(parse_date("2024-01-15") == d);
  CHECK(parse_date(format_date(make_date(2000, 2, 29))) == make_date(2000, 2, 29));
  CHECK_THROWS_AS(parse_date("2024-13-01"), Error);
  CHECK_THROWS_AS(parse_date("2024-02-30"), Error);
  CHECK_THROWS_AS(parse_date("20240115"), Error);
}

TEST_CASE("weekday indexing, Monday = 0") {
  CHECK(weekday_index(make_date(2024, 1, 15)) == 0);  // Monday
  CHECK(weekday_index(make_date(2022, 6, 5)) == 6);   // Sunday
  CHECK(weekday_index(make_date(2024, 1, 17)) == 2);  // Wednesday
}

TEST_CASE("calendar component accessors") {
  Date d = make_date(2019, 12, 31);
  CHECK(year_of(d) == 2019);
  CHECK(month_of(d) == 12);
  CHECK(day_of(d) == 31);
}

TEST_CASE("clock-change transition dates: last Sundays of March and October") {
  CHECK(spring_transition(2024) == make_date(2024, 3, 31));
  CHECK(autumn_transition(2024) == make_date(2024, 10, 27));
  CHECK(spring_transition(2023) == make_date(2023, 3, 26));
  CHECK(autumn_transition(2023) == make_date(2023, 10, 29));
  CHECK(is_spring_transition_day(make_date(2024, 3, 31)));
  CHECK_FALSE(is_spring_transition_day(make_date(2024, 3, 30)));
  CHECK(is_autumn_transition_day(make_date(2023, 10, 29)));
  CHECK_FALSE(is_autumn_transition_day(make_date(2023, 10, 28)));
}

TEST_CASE("utc to local conversion across offsets") {
  // Winter: CET = UTC+1. 2024-01-15T08:00Z -> local clock 09, hour index 10.
  LocalHour lh = utc_to_local(make_date(2024, 1, 15), 8);
  CHECK(lh.day == make_date(2024, 1, 15));
  CHECK(lh.hour == 10);

  // Summer: CEST = UTC+2.
  lh = utc_to_local(make_date(2024, 7, 1), 8);
  CHECK(lh.hour == 11);

  // Day rollover: 23:00Z in winter is 00:00 local the next day.
  lh = utc_to_local(make_date(2024, 1, 15), 23);
  CHECK(lh.day == make_date(2024, 1, 16));
  CHECK(lh.hour == 1);
}

TEST_CASE("month arithmetic") {
  CHECK(months_between(make_date(2024, 1, 15), make_date(2024, 1, 31)) == 0);
  CHECK(months_between(make_date(2024, 1, 15), make_date(2024, 3, 1)) == 2);
  CHECK(months_between(make_date(2023, 11, 1), make_date(2024, 2, 1)) == 3);
  CHECK(add_months_first_day(make_date(2024, 1, 15), 2) == make_date(2024, 3, 1));
  CHECK(add_months_first_day(make_date(2024, 11, 3), 2) == make_date(2025, 1, 1));
}

}  // TEST_SUITE
