#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#include "dotd/error.hpp"

namespace dotd {

/// UTC instant with nanosecond resolution (leap seconds ignored, UT1 == UTC).
using UtcInstant = std::chrono::sys_time<std::chrono::nanoseconds>;

inline UtcInstant make_utc(int year, unsigned month, unsigned day, int hour = 0, int minute = 0, double second = 0.0) {
  using namespace std::chrono;
  const sys_days date{std::chrono::year{year} / std::chrono::month{month} / std::chrono::day{day}};
  const auto ns = static_cast<std::int64_t>(std::llround(second * 1e9));
  return UtcInstant{date.time_since_epoch()} + hours{hour} + minutes{minute} + nanoseconds{ns};
}

inline double seconds_between(UtcInstant from, UtcInstant to) {
  return std::chrono::duration<double>(to - from).count();
}

inline UtcInstant add_seconds(UtcInstant t, double seconds) {
  return t + std::chrono::nanoseconds{static_cast<std::int64_t>(std::llround(seconds * 1e9))};
}

inline double julian_date(UtcInstant t) {
  // 1970-01-01T00:00Z is JD 2440587.5. Split to keep sub-microsecond precision.
  using namespace std::chrono;
  const auto day_count = floor<days>(t);
  const double frac = duration<double>(t - day_count).count() / 86400.0;
  return 2440587.5 + static_cast<double>(day_count.time_since_epoch().count()) + frac;
}

/// Days (including fraction) since J2000.0 (2000-01-01T12:00Z).
inline double days_since_j2000(UtcInstant t) {
  const UtcInstant j2000 = make_utc(2000, 1, 1, 12);
  return std::chrono::duration<double>(t - j2000).count() / 86400.0;
}

namespace detail {

inline bool read_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace detail

/// Parses "YYYY-MM-DDTHH:MM:SS[.fff][Z]"; a space may replace 'T'.
inline UtcInstant parse_utc(std::string_view text) {
  auto fail = [&]() -> UtcInstant { throw ConfigError("invalid UTC instant '" + std::string(text) + "'"); };
  if (!text.empty() && (text.back() == 'Z' || text.back() == 'z')) text.remove_suffix(1);
  if (text.size() < 19 || text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') ||
      text[13] != ':' || text[16] != ':') {
    return fail();
  }
  int year = 0, month = 0, day = 0, hour = 0, minute = 0;
  if (!detail::read_int(text.substr(0, 4), year) || !detail::read_int(text.substr(5, 2), month) ||
      !detail::read_int(text.substr(8, 2), day) || !detail::read_int(text.substr(11, 2), hour) ||
      !detail::read_int(text.substr(14, 2), minute)) {
    return fail();
  }
  double second = 0.0;
  const std::string_view sec = text.substr(17);
  auto [ptr, ec] = std::from_chars(sec.data(), sec.data() + sec.size(), second);
  if (ec != std::errc() || ptr != sec.data() + sec.size()) return fail();
  const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                                        std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok() || hour > 23 || minute > 59 || second < 0.0 || second >= 61.0) return fail();
  return make_utc(year, static_cast<unsigned>(month), static_cast<unsigned>(day), hour, minute, second);
}

/// ISO-8601 with millisecond precision and a trailing 'Z'.
inline std::string format_utc(UtcInstant t) {
  using namespace std::chrono;
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const auto tod = t - day_point;
  const auto h = duration_cast<hours>(tod);
  const auto m = duration_cast<minutes>(tod - h);
  const auto s = duration_cast<seconds>(tod - h - m);
  const auto ms = duration_cast<milliseconds>(tod - h - m - s);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), static_cast<int>(h.count()),
                static_cast<int>(m.count()), static_cast<int>(s.count()), static_cast<int>(ms.count()));
  return buf;
}

}  // namespace dotd
