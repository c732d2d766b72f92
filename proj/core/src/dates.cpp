#include "epf/dates.hpp"

#include <cstdio>

#include "epf/error.hpp"

namespace epf {

namespace chr = std::chrono;

Date make_date(int year, unsigned month, unsigned day) {
  return chr::sys_days(chr::year{year} / chr::month{month} / chr::day{day});
}

int year_of(Date d) { return int(chr::year_month_day(d).year()); }
unsigned month_of(Date d) { return unsigned(chr::year_month_day(d).month()); }
unsigned day_of(Date d) { return unsigned(chr::year_month_day(d).day()); }

int weekday_index(Date d) {
  // chrono: c_encoding 0 = Sunday; remap to 0 = Monday.
  unsigned c = chr::weekday(d).c_encoding();
  return int((c + 6) % 7);
}

std::string format_date(Date d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year_of(d), month_of(d), day_of(d));
  return buf;
}

Date parse_date(const std::string& text) {
  int y = 0;
  unsigned m = 0, dd = 0;
  if (std::sscanf(text.c_str(), "%d-%u-%u", &y, &m, &dd) != 3 || m < 1 || m > 12 ||
      dd < 1 || dd > 31) {
    throw Error(ErrorCode::MalformedRow, "bad date '" + text + "'");
  }
  chr::year_month_day ymd{chr::year{y}, chr::month{m}, chr::day{dd}};
  if (!ymd.ok()) throw Error(ErrorCode::MalformedRow, "invalid date '" + text + "'");
  return chr::sys_days(ymd);
}

static Date last_sunday(int year, unsigned month) {
  Date d = make_date(year, month + 1, 1) - chr::days{1};
  while (weekday_index(d) != 6) d -= chr::days{1};
  return d;
}

Date spring_transition(int year) { return last_sunday(year, 3); }
Date autumn_transition(int year) { return last_sunday(year, 10); }

bool is_spring_transition_day(Date d) { return d == spring_transition(year_of(d)); }
bool is_autumn_transition_day(Date d) { return d == autumn_transition(year_of(d)); }

LocalHour utc_to_local(Date utc_day, int utc_hour) {
  // CEST is in effect from 01:00 UTC on the spring transition day to
  // 01:00 UTC on the autumn transition day.
  int year = year_of(utc_day);
  Date spring = spring_transition(year);
  Date autumn = autumn_transition(year);
  bool summer =
      (utc_day > spring || (utc_day == spring && utc_hour >= 1)) &&
      (utc_day < autumn || (utc_day == autumn && utc_hour < 1));
  int offset = summer ? 2 : 1;
  int local = utc_hour + offset;
  Date day = utc_day;
  if (local >= 24) {
    local -= 24;
    day += chr::days{1};
  }
  return {day, local + 1};
}

int months_between(Date from, Date to) {
  return (year_of(to) - year_of(from)) * 12 + int(month_of(to)) - int(month_of(from));
}

Date add_months_first_day(Date d, int months) {
  int total = year_of(d) * 12 + int(month_of(d)) - 1 + months;
  int y = total / 12;
  int m = total % 12;
  if (m < 0) {
    m += 12;
    y -= 1;
  }
  return make_date(y, unsigned(m + 1), 1);
}

}  // namespace epf
