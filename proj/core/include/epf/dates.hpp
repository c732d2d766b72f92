#pragma once

#include <chrono>
#include <cstdint>
#include <string>

namespace epf {

// Calendar date, days since 1970-01-01. Arithmetic in whole days.
using Date = std::chrono::sys_days;

Date make_date(int year, unsigned month, unsigned day);
int year_of(Date d);
unsigned month_of(Date d);
unsigned day_of(Date d);

// 0 = Monday ... 6 = Sunday.
int weekday_index(Date d);

std::string format_date(Date d);           // YYYY-MM-DD
Date parse_date(const std::string& text);  // strict YYYY-MM-DD

// Europe/Berlin DST rule: CEST runs from the last Sunday of March to the
// last Sunday of October.
Date spring_transition(int year);
Date autumn_transition(int year);
bool is_spring_transition_day(Date d);
bool is_autumn_transition_day(Date d);

struct LocalHour {
  Date day;
  int hour;  // 1..24, hour h covers local clock interval [h-1, h)
};

// Converts a UTC timestamp (date + clock hour 0..23) to CET/CEST local time.
LocalHour utc_to_local(Date utc_day, int utc_hour);

// Months between the first day of the month of `from` and of `to`.
int months_between(Date from, Date to);
Date add_months_first_day(Date d, int months);

}  // namespace epf
