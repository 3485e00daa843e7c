#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace newsnet {

// Calendar date, backed by days since the Unix epoch.
using Date = std::chrono::sys_days;

Date make_date(int year, int month, int day);
Date parse_date(std::string_view text);           // "YYYY-MM-DD"
std::string format_date(Date d);

int year_of(Date d);
int month_of(Date d);
int day_of(Date d);
bool is_weekend(Date d);

struct YearMonth {
    int year = 0;
    int month = 0;
    auto operator<=>(const YearMonth&) const = default;
};

YearMonth year_month(Date d);
YearMonth parse_year_month(std::string_view text);  // "YYYY-MM"
std::string format_year_month(YearMonth ym);
YearMonth add_months(YearMonth ym, int n);
Date first_day(YearMonth ym);
Date last_day(YearMonth ym);

// A statement dated inside quarter Q becomes usable on the first day of Q+2.
Date book_equity_first_usable(Date statement_date);

// Instant in time, seconds since the Unix epoch (UTC).
struct Timestamp {
    std::int64_t utc_seconds = 0;
    auto operator<=>(const Timestamp&) const = default;
};

// Parses ISO-8601 with an explicit UTC offset, e.g. "2020-03-02T10:00:00-05:00".
// "Z" counts as an explicit offset. Throws std::runtime_error otherwise.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp ts, int offset_minutes);

struct LocalTime {
    Date date;
    int seconds_of_day = 0;
};

// US Eastern time, post-2007 DST rule (2nd Sunday of March 02:00 to
// 1st Sunday of November 02:00, UTC-4 inside, UTC-5 outside).
bool new_york_is_dst(Timestamp ts);
int new_york_offset_minutes(Timestamp ts);
LocalTime to_new_york(Timestamp ts);

// Offset in effect at 10:00 local on the given date (used by generators).
int new_york_offset_minutes_on(Date local_date);

}  // namespace newsnet
