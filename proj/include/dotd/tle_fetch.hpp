#pragma once

// Blocking HTTP(S) download of TLE documents. Kept apart from tle.hpp so the
// rest of the library never pulls in networking.

#include <chrono>
#include <string>

#include "dotd/error.hpp"
#include "httplib.h"

namespace dotd {

enum class FetchErrorKind { kNetwork, kStatus, kTimeout, kBadUrl };

class FetchError : public Error {
 public:
  FetchError(FetchErrorKind kind, const std::string& message, int status = 0)
      : Error(message), kind_(kind), status_(status) {}

  FetchErrorKind kind() const { return kind_; }
  /// HTTP status for kStatus, 0 otherwise.
  int status() const { return status_; }

 private:
  FetchErrorKind kind_;
  int status_;
};

/// GETs `url` and returns the body untouched.
inline std::string fetch_tle(const std::string& url, std::chrono::duration<double> timeout) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw FetchError(FetchErrorKind::kBadUrl, "missing scheme in '" + url + "'");
  const auto path_begin = url.find('/', scheme_end + 3);
  const std::string origin = url.substr(0, path_begin);
  const std::string path = path_begin == std::string::npos ? "/" : url.substr(path_begin);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (url.rfind("https://", 0) == 0) {
    throw FetchError(FetchErrorKind::kBadUrl, "built without TLS support; cannot fetch '" + url + "'");
  }
#endif

  httplib::Client client(origin);
  const auto usec = std::chrono::duration_cast<std::chrono::microseconds>(timeout);
  client.set_connection_timeout(usec);
  client.set_read_timeout(usec);
  client.set_write_timeout(usec);
  client.set_follow_location(true);

  const auto started = std::chrono::steady_clock::now();
  auto result = client.Get(path);
  if (!result) {
    const auto err = result.error();
    const std::string what = httplib::to_string(err);
    // httplib reports an expired read timeout as a plain Read error; the elapsed time tells them apart.
    const bool read_expired =
        err == httplib::Error::Read && std::chrono::steady_clock::now() - started >= 0.9 * timeout;
    if (err == httplib::Error::ConnectionTimeout || read_expired) {
      throw FetchError(FetchErrorKind::kTimeout, "timed out fetching '" + url + "': " + what);
    }
    throw FetchError(FetchErrorKind::kNetwork, "network failure fetching '" + url + "': " + what);
  }
  if (result->status < 200 || result->status >= 300) {
    throw FetchError(FetchErrorKind::kStatus, "HTTP " + std::to_string(result->status) + " from '" + url + "'",
                     result->status);
  }
  return result->body;
}

}  // namespace dotd
