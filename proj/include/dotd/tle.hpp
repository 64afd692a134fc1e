#pragma once

// Two-line element set parsing, validation and serialization.
//
// Column layout follows the NORAD fixed-width format: both lines are 69
// characters, the last one being a modulo-10 checksum of the first 68.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "dotd/error.hpp"
#include "dotd/time.hpp"

namespace dotd {

struct TleRecord {
  std::string name;
  std::int64_t catalog_id = 0;
  UtcInstant epoch{};
  double inclination_deg = 0.0;
  double raan_deg = 0.0;
  double eccentricity = 0.0;
  double arg_perigee_deg = 0.0;
  double mean_anomaly_deg = 0.0;
  double mean_motion_rev_per_day = 0.0;
  std::int64_t revolution_number = 0;
};

struct TleIssue {
  std::size_t line = 0;
  TleErrorKind kind{};
  std::string message;
};

struct TleParseOptions {
  /// Downgrade checksum mismatches to issues instead of throwing.
  bool permissive_checksum = false;
  /// Receives downgraded issues when non-null.
  std::vector<TleIssue>* issues = nullptr;
};

/// Modulo-10 checksum: digits add their value, '-' adds one, everything else is ignored.
inline int tle_checksum(std::string_view body) {
  int sum = 0;
  for (char c : body) {
    if (c >= '0' && c <= '9') {
      sum += c - '0';
    } else if (c == '-') {
      sum += 1;
    }
  }
  return sum % 10;
}

/// Throws TleParseError(kFieldRange) if the record breaks a type invariant.
inline void validate(const TleRecord& r, std::size_t line = 0) {
  auto bad = [&](const std::string& what) { throw TleParseError(TleErrorKind::kFieldRange, line, what); };
  if (!(r.inclination_deg >= 0.0 && r.inclination_deg <= 180.0)) bad("inclination outside [0, 180]");
  if (!(r.raan_deg >= 0.0 && r.raan_deg < 360.0)) bad("RAAN outside [0, 360)");
  if (!(r.arg_perigee_deg >= 0.0 && r.arg_perigee_deg < 360.0)) bad("argument of perigee outside [0, 360)");
  if (!(r.mean_anomaly_deg >= 0.0 && r.mean_anomaly_deg < 360.0)) bad("mean anomaly outside [0, 360)");
  if (!(r.eccentricity >= 0.0 && r.eccentricity < 1.0)) bad("eccentricity outside [0, 1)");
  if (!(r.mean_motion_rev_per_day > 0.0)) bad("mean motion must be positive");
}

namespace tle_detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

inline double parse_double(std::string_view field, std::size_t line, const char* what) {
  std::string_view s = trim(field);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw TleParseError(TleErrorKind::kNumericField, line, std::string(what) + " '" + std::string(field) + "'");
  }
  return value;
}

inline std::int64_t parse_int(std::string_view field, std::size_t line, const char* what, bool blank_is_zero = false) {
  std::string_view s = trim(field);
  if (s.empty() && blank_is_zero) return 0;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw TleParseError(TleErrorKind::kNumericField, line, std::string(what) + " '" + std::string(field) + "'");
  }
  return value;
}

// Alpha-5 catalog numbers: a leading letter (I and O skipped) stands for 10..33.
inline std::int64_t parse_catalog(std::string_view field, std::size_t line) {
  std::string_view s = trim(field);
  if (!s.empty() && s.front() >= 'A' && s.front() <= 'Z' && s.front() != 'I' && s.front() != 'O') {
    int lead = s.front() - 'A' + 10;
    if (s.front() > 'I') --lead;
    if (s.front() > 'O') --lead;
    return lead * 10000 + parse_int(s.substr(1), line, "catalog number");
  }
  return parse_int(s, line, "catalog number");
}

inline std::string format_catalog(std::int64_t id) {
  char buf[24];
  if (id <= 99999) {
    std::snprintf(buf, sizeof buf, "%05lld", static_cast<long long>(id));
    return buf;
  }
  int lead = static_cast<int>(id / 10000);
  char letter = static_cast<char>('A' + lead - 10);
  if (letter >= 'I') ++letter;
  if (letter >= 'O') ++letter;
  std::snprintf(buf, sizeof buf, "%c%04lld", letter, static_cast<long long>(id % 10000));
  return buf;
}

inline UtcInstant parse_epoch(std::string_view field, std::size_t line) {
  const auto yy = parse_int(field.substr(0, 2), line, "epoch year");
  const std::string_view day_text = trim(field.substr(2));
  const auto dot = day_text.find('.');
  const auto whole = parse_int(day_text.substr(0, dot), line, "epoch day");
  double frac = 0.0;
  if (dot != std::string_view::npos) {
    const std::string frac_text = "0" + std::string(day_text.substr(dot));
    frac = parse_double(frac_text, line, "epoch day fraction");
  }
  if (whole < 1 || whole > 366) throw TleParseError(TleErrorKind::kNumericField, line, "epoch day out of range");
  const int year = static_cast<int>(yy < 57 ? 2000 + yy : 1900 + yy);
  using namespace std::chrono;
  return make_utc(year, 1, 1) + days{whole - 1} + nanoseconds{static_cast<std::int64_t>(std::llround(frac * 86400e9))};
}

inline void check_line(std::string_view text, char marker, std::size_t line, const TleParseOptions& opts) {
  if (text.size() != 69) {
    throw TleParseError(TleErrorKind::kLineLength, line, "expected 69 characters, got " + std::to_string(text.size()));
  }
  if (text[0] != marker || text[1] != ' ') {
    throw TleParseError(TleErrorKind::kLineMarker, line, std::string("expected line marker '") + marker + "'");
  }
  const int expected = tle_checksum(text.substr(0, 68));
  const char got = text[68];
  if (got - '0' != expected) {
    const std::string detail = std::string("expected ") + static_cast<char>('0' + expected) + ", found '" + got + "'";
    if (!opts.permissive_checksum) throw TleParseError(TleErrorKind::kChecksum, line, detail);
    if (opts.issues) opts.issues->push_back({line, TleErrorKind::kChecksum, detail});
  }
}

inline bool is_data_line(std::string_view s, char marker) { return s.size() >= 2 && s[0] == marker && s[1] == ' '; }

}  // namespace tle_detail

/// Parses a 2LE/3LE document. Blank lines are ignored; records keep document order.
inline std::vector<TleRecord> parse_tle(std::string_view text, const TleParseOptions& opts = {}) {
  using namespace tle_detail;
  struct Line {
    std::size_t number;
    std::string_view text;
  };
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t')) raw.remove_suffix(1);
    if (!trim(raw).empty()) lines.push_back({number, raw});
  }

  std::vector<TleRecord> records;
  std::size_t i = 0;
  while (i < lines.size()) {
    std::string name;
    if (!is_data_line(lines[i].text, '1')) {
      if (is_data_line(lines[i].text, '2')) {
        throw TleParseError(TleErrorKind::kLineMarker, lines[i].number, "line 2 without a preceding line 1");
      }
      std::string_view n = trim(lines[i].text);
      if (n.size() >= 2 && n[0] == '0' && n[1] == ' ') n = trim(n.substr(2));
      name = std::string(n);
      ++i;
      if (i >= lines.size()) {
        throw TleParseError(TleErrorKind::kLineMarker, lines[i - 1].number + 1, "missing line 1 after name line");
      }
    }
    const Line l1 = lines[i];
    if (i + 1 >= lines.size()) throw TleParseError(TleErrorKind::kLineMarker, l1.number + 1, "missing line 2");
    const Line l2 = lines[i + 1];
    i += 2;

    check_line(l1.text, '1', l1.number, opts);
    check_line(l2.text, '2', l2.number, opts);

    TleRecord r;
    r.catalog_id = parse_catalog(l1.text.substr(2, 5), l1.number);
    if (parse_catalog(l2.text.substr(2, 5), l2.number) != r.catalog_id) {
      throw TleParseError(TleErrorKind::kCatalogMismatch, l2.number, "");
    }
    r.epoch = parse_epoch(l1.text.substr(18, 14), l1.number);
    r.inclination_deg = parse_double(l2.text.substr(8, 8), l2.number, "inclination");
    r.raan_deg = parse_double(l2.text.substr(17, 8), l2.number, "RAAN");
    const std::string_view ecc = trim(l2.text.substr(26, 7));
    if (ecc.empty() || !std::all_of(ecc.begin(), ecc.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw TleParseError(TleErrorKind::kNumericField, l2.number, "eccentricity '" + std::string(ecc) + "'");
    }
    r.eccentricity = parse_double("0." + std::string(ecc), l2.number, "eccentricity");
    r.arg_perigee_deg = parse_double(l2.text.substr(34, 8), l2.number, "argument of perigee");
    r.mean_anomaly_deg = parse_double(l2.text.substr(43, 8), l2.number, "mean anomaly");
    r.mean_motion_rev_per_day = parse_double(l2.text.substr(52, 11), l2.number, "mean motion");
    r.revolution_number = parse_int(l2.text.substr(63, 5), l2.number, "revolution number", true);
    r.name = name.empty() ? format_catalog(r.catalog_id) : name;
    validate(r, l2.number);
    records.push_back(std::move(r));
  }
  return records;
}

/// Renders one record as name line + two checksummed data lines (drag terms written as zero).
inline std::string format_tle(const TleRecord& r) {
  using namespace std::chrono;
  const auto day_point = floor<days>(r.epoch);
  const year_month_day ymd{day_point};
  const int year = static_cast<int>(ymd.year());
  const auto jan1 = sys_days{ymd.year() / January / 1};
  const double day_of_year = static_cast<double>((day_point - jan1).count() + 1) +
                             duration<double>(r.epoch - day_point).count() / 86400.0;

  // Fixed-point fields must not round up to their exclusive bound.
  auto angle = [](double deg) {
    const double rounded = std::round(deg * 1e4) / 1e4;
    return rounded >= 360.0 ? 0.0 : rounded;
  };
  const long ecc = std::min(9999999L, std::lround(r.eccentricity * 1e7));

  char l1[80];
  std::snprintf(l1, sizeof l1, "1 %sU %-8s %02d%012.8f  .00000000  00000-0  00000-0 0  999",
                tle_detail::format_catalog(r.catalog_id).c_str(), "", year % 100, day_of_year);
  char l2[80];
  std::snprintf(l2, sizeof l2, "2 %s %8.4f %8.4f %07ld %8.4f %8.4f %11.8f%5lld", tle_detail::format_catalog(r.catalog_id).c_str(),
                r.inclination_deg, angle(r.raan_deg), ecc, angle(r.arg_perigee_deg), angle(r.mean_anomaly_deg),
                r.mean_motion_rev_per_day, static_cast<long long>(r.revolution_number % 100000));
  std::string line1(l1);
  std::string line2(l2);
  line1.push_back(static_cast<char>('0' + tle_checksum(line1)));
  line2.push_back(static_cast<char>('0' + tle_checksum(line2)));
  return r.name + "\n" + line1 + "\n" + line2 + "\n";
}

inline std::string format_tle(const std::vector<TleRecord>& records) {
  std::string out;
  for (const auto& r : records) out += format_tle(r);
  return out;
}

}  // namespace dotd
