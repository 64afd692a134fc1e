#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dotd {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition was violated (negative radicand, zero distance, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value or combination.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class TleErrorKind { kLineLength, kChecksum, kNumericField, kLineMarker, kCatalogMismatch, kFieldRange };

inline const char* to_string(TleErrorKind kind) {
  switch (kind) {
    case TleErrorKind::kLineLength: return "wrong line length";
    case TleErrorKind::kChecksum: return "checksum mismatch";
    case TleErrorKind::kNumericField: return "unparsable numeric field";
    case TleErrorKind::kLineMarker: return "bad line-number marker";
    case TleErrorKind::kCatalogMismatch: return "catalog number differs between lines";
    case TleErrorKind::kFieldRange: return "element out of range";
  }
  return "unknown";
}

/// Malformed TLE input; `line()` is 1-based within the parsed document.
class TleParseError : public Error {
 public:
  TleParseError(TleErrorKind kind, std::size_t line, const std::string& detail)
      : Error("line " + std::to_string(line) + ": " + to_string(kind) + (detail.empty() ? "" : ": " + detail)),
        kind_(kind),
        line_(line) {}

  TleErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  TleErrorKind kind_;
  std::size_t line_;
};

/// Propagation failure for one satellite; carries its identity.
class PropagationError : public Error {
 public:
  PropagationError(const std::string& satellite, const std::string& detail)
      : Error("satellite " + satellite + ": " + detail), satellite_(satellite) {}

  const std::string& satellite() const { return satellite_; }

 private:
  std::string satellite_;
};

}  // namespace dotd
