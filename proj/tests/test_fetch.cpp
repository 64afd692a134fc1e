#include <gtest/gtest.h>

#include <thread>

#include "dotd/tle.hpp"
#include "dotd/tle_fetch.hpp"

namespace {

const char* kFixture =
    "ISS (ZARYA)\r\n"
    "1 25544U 98067A   18135.61844383  .00002728  00000-0  48567-4 0  9998\r\n"
    "2 25544  51.6402 181.0633 0004018  88.8954  22.2246 15.54059185113452\r\n";

class LocalServer {
 public:
  LocalServer() {
    server_.Get("/tle", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kFixture, "text/plain");
    });
    server_.Get("/missing", [](const httplib::Request&, httplib::Response& res) { res.status = 404; });
    server_.Get("/slow", [](const httplib::Request&, httplib::Response& res) {
      std::this_thread::sleep_for(std::chrono::milliseconds(1500));
      res.set_content(kFixture, "text/plain");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() {
    server_.stop();
    thread_.join();
  }
  std::string url(const std::string& path) const { return "http://127.0.0.1:" + std::to_string(port_) + path; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

dotd::FetchErrorKind kind_of(const std::string& url, double timeout_s) {
  try {
    dotd::fetch_tle(url, std::chrono::duration<double>(timeout_s));
  } catch (const dotd::FetchError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no FetchError for " << url;
  return dotd::FetchErrorKind::kBadUrl;
}

}  // namespace

TEST(Fetch, ReturnsBodyByteForByte) {
  LocalServer server;
  const auto body = dotd::fetch_tle(server.url("/tle"), std::chrono::seconds(5));
  EXPECT_EQ(body, kFixture);
  const auto recs = dotd::parse_tle(body);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].catalog_id, 25544);
}

TEST(Fetch, DistinguishesFailureModes) {
  LocalServer server;
  try {
    dotd::fetch_tle(server.url("/missing"), std::chrono::seconds(5));
    FAIL();
  } catch (const dotd::FetchError& e) {
    EXPECT_EQ(e.kind(), dotd::FetchErrorKind::kStatus);
    EXPECT_EQ(e.status(), 404);
  }
  EXPECT_EQ(kind_of(server.url("/slow"), 0.3), dotd::FetchErrorKind::kTimeout);
  EXPECT_EQ(kind_of("http://127.0.0.1:1/tle", 2), dotd::FetchErrorKind::kNetwork);
  EXPECT_EQ(kind_of("celestrak.org/tle", 2), dotd::FetchErrorKind::kBadUrl);
}
