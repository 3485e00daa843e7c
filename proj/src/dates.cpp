#include "newsnet/dates.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace newsnet {

namespace {

using namespace std::chrono;

[[noreturn]] void bad(std::string_view what, std::string_view value) {
    throw std::runtime_error(std::string(what) + ": '" + std::string(value) + "'");
}

int parse_int(std::string_view s, std::string_view ctx) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size()) bad("invalid number in", ctx);
    return out;
}

// nth occurrence (1-based) of a weekday within a month
Date nth_weekday(int y, int m, weekday wd, int nth) {
    Date d = sys_days{year{y} / m / 1};
    while (weekday{d} != wd) d += days{1};
    return d + days{7 * (nth - 1)};
}

}  // namespace

Date make_date(int y, int m, int d) {
    year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) bad("invalid date", format_date(sys_days{ymd}));
    return sys_days{ymd};
}

Date parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') bad("invalid date", text);
    return make_date(parse_int(text.substr(0, 4), text), parse_int(text.substr(5, 2), text),
                     parse_int(text.substr(8, 2), text));
}

std::string format_date(Date d) {
    year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

int year_of(Date d) { return int(year_month_day{d}.year()); }
int month_of(Date d) { return int(unsigned(year_month_day{d}.month())); }
int day_of(Date d) { return int(unsigned(year_month_day{d}.day())); }

bool is_weekend(Date d) {
    weekday wd{d};
    return wd == Saturday || wd == Sunday;
}

YearMonth year_month(Date d) { return {year_of(d), month_of(d)}; }

YearMonth parse_year_month(std::string_view text) {
    if (text.size() != 7 || text[4] != '-') bad("invalid month", text);
    YearMonth ym{parse_int(text.substr(0, 4), text), parse_int(text.substr(5, 2), text)};
    if (ym.month < 1 || ym.month > 12) bad("invalid month", text);
    return ym;
}

std::string format_year_month(YearMonth ym) {
    char buf[12];
    std::snprintf(buf, sizeof buf, "%04d-%02d", ym.year, ym.month);
    return buf;
}

YearMonth add_months(YearMonth ym, int n) {
    int idx = ym.year * 12 + (ym.month - 1) + n;
    int y = idx / 12, m = idx % 12;
    if (m < 0) {
        m += 12;
        --y;
    }
    return {y, m + 1};
}

Date first_day(YearMonth ym) { return make_date(ym.year, ym.month, 1); }

Date last_day(YearMonth ym) { return first_day(add_months(ym, 1)) - days{1}; }

Date book_equity_first_usable(Date statement_date) {
    int q_start_month = 1 + 3 * ((month_of(statement_date) - 1) / 3);
    YearMonth q{year_of(statement_date), q_start_month};
    return first_day(add_months(q, 6));
}

Timestamp parse_timestamp(std::string_view text) {
    // YYYY-MM-DD[T ]HH:MM[:SS](Z|±HH:MM|±HHMM)
    if (text.size() < 17) bad("invalid timestamp", text);
    Date date = parse_date(text.substr(0, 10));
    if (text[10] != 'T' && text[10] != ' ') bad("invalid timestamp", text);
    std::string_view rest = text.substr(11);
    if (rest.size() < 5 || rest[2] != ':') bad("invalid timestamp", text);
    int hh = parse_int(rest.substr(0, 2), text);
    int mm = parse_int(rest.substr(3, 2), text);
    int ss = 0;
    std::size_t pos = 5;
    if (rest.size() > pos && rest[pos] == ':') {
        if (rest.size() < pos + 3) bad("invalid timestamp", text);
        ss = parse_int(rest.substr(pos + 1, 2), text);
        pos += 3;
    }
    if (hh > 23 || mm > 59 || ss > 60) bad("invalid timestamp", text);
    if (pos >= rest.size()) bad("timestamp lacks UTC offset", text);
    std::string_view off = rest.substr(pos);
    int offset_minutes = 0;
    if (off == "Z" || off == "z") {
        offset_minutes = 0;
    } else if (off[0] == '+' || off[0] == '-') {
        int sign = off[0] == '-' ? -1 : 1;
        std::string_view body = off.substr(1);
        int oh = 0, om = 0;
        if (body.size() == 5 && body[2] == ':') {
            oh = parse_int(body.substr(0, 2), text);
            om = parse_int(body.substr(3, 2), text);
        } else if (body.size() == 4) {
            oh = parse_int(body.substr(0, 2), text);
            om = parse_int(body.substr(2, 2), text);
        } else if (body.size() == 2) {
            oh = parse_int(body, text);
        } else {
            bad("invalid timestamp offset", text);
        }
        if (oh > 18 || om > 59) bad("invalid timestamp offset", text);
        offset_minutes = sign * (oh * 60 + om);
    } else {
        bad("timestamp lacks UTC offset", text);
    }
    std::int64_t local = std::int64_t(date.time_since_epoch().count()) * 86400 + hh * 3600 +
                         mm * 60 + ss;
    return Timestamp{local - std::int64_t(offset_minutes) * 60};
}

std::string format_timestamp(Timestamp ts, int offset_minutes) {
    std::int64_t local = ts.utc_seconds + std::int64_t(offset_minutes) * 60;
    std::int64_t d = local / 86400, sod = local % 86400;
    if (sod < 0) {
        sod += 86400;
        --d;
    }
    Date date{days{static_cast<int>(d)}};
    char buf[40];
    int oh = std::abs(offset_minutes) / 60, om = std::abs(offset_minutes) % 60;
    std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02d%c%02d:%02d", format_date(date).c_str(),
                  int(sod / 3600), int((sod % 3600) / 60), int(sod % 60),
                  offset_minutes < 0 ? '-' : '+', oh, om);
    return buf;
}

bool new_york_is_dst(Timestamp ts) {
    // Transitions expressed in UTC: 2nd Sunday of March 02:00 EST = 07:00 UTC,
    // 1st Sunday of November 02:00 EDT = 06:00 UTC. Both are mid-year, so the
    // UTC year equals the local year at the transition instants.
    std::int64_t d = ts.utc_seconds / 86400;
    if (ts.utc_seconds < 0 && ts.utc_seconds % 86400 != 0) --d;
    int y = year_of(Date{std::chrono::days{static_cast<int>(d)}});
    std::int64_t spring =
        std::int64_t(nth_weekday(y, 3, std::chrono::Sunday, 2).time_since_epoch().count()) * 86400 +
        7 * 3600;
    std::int64_t fall =
        std::int64_t(nth_weekday(y, 11, std::chrono::Sunday, 1).time_since_epoch().count()) * 86400 +
        6 * 3600;
    return ts.utc_seconds >= spring && ts.utc_seconds < fall;
}

int new_york_offset_minutes(Timestamp ts) { return new_york_is_dst(ts) ? -240 : -300; }

LocalTime to_new_york(Timestamp ts) {
    std::int64_t local = ts.utc_seconds + std::int64_t(new_york_offset_minutes(ts)) * 60;
    std::int64_t d = local / 86400, sod = local % 86400;
    if (sod < 0) {
        sod += 86400;
        --d;
    }
    return LocalTime{Date{std::chrono::days{static_cast<int>(d)}}, static_cast<int>(sod)};
}

int new_york_offset_minutes_on(Date local_date) {
    // 10:00 local is far from both transition instants, so EST first guess is safe.
    std::int64_t guess_utc =
        std::int64_t(local_date.time_since_epoch().count()) * 86400 + 10 * 3600 + 5 * 3600;
    return new_york_offset_minutes(Timestamp{guess_utc});
}

}  // namespace newsnet
