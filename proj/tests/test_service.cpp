#include <gtest/gtest.h>

#include <future>
#include <string>
#include <thread>
#include <vector>

#include "elastic/service.hpp"

using namespace elastic;
using namespace elastic::service;

namespace {

const std::string kPair = R"({"u":{"pos":[0,0],"dir":[0,1]},"v":{"pos":[1,0],"dir":[1,0]}})";

json body_of(const Response& r) { return json::parse(r.body); }

class LiveServer : public ::testing::Test {
 protected:
  void SetUp() override {
    register_routes(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  void TearDown() override {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(60, 0);
    return c;
  }

  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST(Handlers, ScurveAlignedIsZeroEnergyLine) {
  const auto r = handle_scurve(R"({"u":{"pos":[0,0],"dir":[1,0]},"v":{"pos":[2,0],"dir":[1,0]}})");
  ASSERT_EQ(r.status, 200);
  const auto j = body_of(r);
  EXPECT_EQ(j["energy"].get<double>(), 0.0);
  EXPECT_EQ(j["case_tag"], "trivial_line");
  EXPECT_EQ(j["polyline"].size(), kDefaultSamples);
}

TEST(Handlers, ScurveInfeasibleIs422) {
  const auto r = handle_scurve(R"({"u":{"pos":[0,0],"dir":[-1,0]},"v":{"pos":[1,0],"dir":[1,0]}})");
  EXPECT_EQ(r.status, 422);
  const auto j = body_of(r);
  EXPECT_EQ(j["code"], "infeasible");
  EXPECT_NEAR(j["details"]["alpha"].get<double>(), kPi, 1e-12);
}

TEST(Handlers, ScurveNormalizesDirectionsButRejectsZero) {
  const auto scaled = handle_scurve(R"({"u":{"pos":[0,0],"dir":[0,7]},"v":{"pos":[1,0],"dir":[0.5,0]}})");
  ASSERT_EQ(scaled.status, 200);
  EXPECT_EQ(body_of(scaled)["energy"], body_of(handle_scurve(kPair))["energy"]);
  const auto zero = handle_scurve(R"({"u":{"pos":[0,0],"dir":[0,0]},"v":{"pos":[1,0],"dir":[1,0]}})");
  EXPECT_EQ(zero.status, 400);
  EXPECT_EQ(body_of(zero)["code"], "bad_request");
}

TEST(Handlers, MalformedBodiesAndSamples) {
  EXPECT_EQ(handle_scurve("{").status, 400);
  EXPECT_EQ(handle_scurve("[1,2]").status, 400);
  EXPECT_EQ(handle_scurve(kPair, "1").status, 400);
  EXPECT_EQ(handle_scurve(kPair, "abc").status, 400);
  EXPECT_EQ(handle_scurve(kPair, "1000001").status, 400);
  const auto r = handle_scurve(kPair, "7");
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(body_of(r)["polyline"].size(), 7u);
}

TEST(Handlers, SplineCollinearAndErrors) {
  const auto ok = handle_spline(R"({"points":[[0,0],[1,0],[3,0]]})", "4");
  ASSERT_EQ(ok.status, 200);
  const auto j = body_of(ok);
  EXPECT_EQ(j["total_energy"].get<double>(), 0.0);
  ASSERT_EQ(j["segments"].size(), 2u);
  EXPECT_EQ(j["segments"][0]["polyline"].size(), 4u);

  const auto dup = handle_spline(R"({"points":[[0,0],[0,0],[1,0]]})");
  EXPECT_EQ(dup.status, 400);
  const auto infeasible = handle_spline(R"({"points":[[0,0],[1,0]],"fixed_dirs":[[-1,0],[1,0]]})");
  EXPECT_EQ(infeasible.status, 422);
  EXPECT_EQ(body_of(infeasible)["details"]["report"].size(), 1u);
}

TEST(Handlers, TwoFixedPointSplineMatchesScurve) {
  const auto s = body_of(handle_spline(R"({"points":[[0,0],[1,0]],"fixed_dirs":[[0,1],[1,0]]})"));
  const auto c = body_of(handle_scurve(kPair));
  EXPECT_EQ(s["total_energy"], c["energy"]);
  EXPECT_EQ(s["segments"][0]["curve"], c["curve"]);
}

TEST(Handlers, HealthAndDeterminism) {
  const auto h = handle_health();
  EXPECT_EQ(h.status, 200);
  EXPECT_EQ(body_of(h)["status"], "ok");
  EXPECT_NEAR(body_of(h)["d"].get<double>(), 1.1981402347355923, 1e-13);
  EXPECT_EQ(handle_health().body, h.body);
  EXPECT_EQ(handle_scurve(kPair).body, handle_scurve(kPair).body);
  const std::string sp = R"({"points":[[0,0],[1,1],[2,0],[3,1]]})";
  EXPECT_EQ(handle_spline(sp).body, handle_spline(sp).body);
}

TEST(Origins, OnlyLocalOriginsAreAllowed) {
  EXPECT_TRUE(is_local_origin("http://localhost"));
  EXPECT_TRUE(is_local_origin("http://localhost:5173"));
  EXPECT_TRUE(is_local_origin("https://127.0.0.1:8080"));
  EXPECT_FALSE(is_local_origin("http://localhost.evil.com"));
  EXPECT_FALSE(is_local_origin("http://example.com"));
  EXPECT_FALSE(is_local_origin("http://localhost:"));
  EXPECT_FALSE(is_local_origin(""));
}

TEST(Port, FromEnvironment) {
  ::unsetenv("ELASTIC_PORT");
  EXPECT_EQ(port_from_env(), kDefaultPort);
  ::setenv("ELASTIC_PORT", "9123", 1);
  EXPECT_EQ(port_from_env(), 9123);
  ::setenv("ELASTIC_PORT", "99999", 1);
  EXPECT_THROW(port_from_env(), DomainError);
  ::unsetenv("ELASTIC_PORT");
}

TEST_F(LiveServer, HealthAndScurve) {
  auto c = client();
  const auto h = c.Get("/api/health");
  ASSERT_TRUE(h);
  EXPECT_EQ(h->status, 200);
  EXPECT_EQ(h->body, handle_health().body);
  const auto r = c.Post("/api/scurve?samples=16", kPair, "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(r->body, handle_scurve(kPair, "16").body);
  EXPECT_EQ(r->get_header_value("Content-Type"), "application/json");
}

TEST_F(LiveServer, ConcurrentRequestsMatchSerialResults) {
  std::vector<std::string> bodies;
  for (int i = 0; i < 12; ++i) {
    const double a = 0.1 + 0.2 * i;
    bodies.push_back(json{{"u", {{"pos", {0, 0}}, {"dir", {std::cos(a), std::sin(a)}}}},
                          {"v", {{"pos", {1, 0}}, {"dir", {1, 0}}}}}
                         .dump());
  }
  std::vector<std::string> serial;
  for (const auto& b : bodies) serial.push_back(handle_scurve(b).body);

  std::vector<std::future<std::pair<int, std::string>>> futures;
  for (const auto& b : bodies) {
    futures.push_back(std::async(std::launch::async, [this, b] {
      auto c = client();
      const auto r = c.Post("/api/scurve", b, "application/json");
      return r ? std::pair{r->status, r->body} : std::pair{-1, std::string()};
    }));
  }
  for (std::size_t i = 0; i < futures.size(); ++i) {
    const auto [status, body] = futures[i].get();
    EXPECT_EQ(status, 200);
    EXPECT_EQ(body, serial[i]) << i;
  }
}

TEST_F(LiveServer, CorsForLocalOriginsOnly) {
  auto c = client();
  const auto local = c.Get("/api/health", {{"Origin", "http://localhost:5173"}});
  ASSERT_TRUE(local);
  EXPECT_EQ(local->get_header_value("Access-Control-Allow-Origin"), "http://localhost:5173");
  const auto remote = c.Get("/api/health", {{"Origin", "http://example.com"}});
  ASSERT_TRUE(remote);
  EXPECT_FALSE(remote->has_header("Access-Control-Allow-Origin"));
  const auto pre = c.Options("/api/scurve", {{"Origin", "http://127.0.0.1:3000"}});
  ASSERT_TRUE(pre);
  EXPECT_EQ(pre->status, 204);
  EXPECT_EQ(pre->get_header_value("Access-Control-Allow-Origin"), "http://127.0.0.1:3000");
}

TEST_F(LiveServer, ErrorStatusesOverHttp) {
  auto c = client();
  const auto bad = c.Post("/api/scurve", "{", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  const auto infeasible =
      c.Post("/api/scurve", R"({"u":{"pos":[0,0],"dir":[-1,0]},"v":{"pos":[1,0],"dir":[1,0]}})", "application/json");
  ASSERT_TRUE(infeasible);
  EXPECT_EQ(infeasible->status, 422);
  const std::string huge(kMaxBodyBytes + 16, ' ');
  const auto big = c.Post("/api/spline", huge, "application/json");
  ASSERT_TRUE(big);
  EXPECT_EQ(big->status, 413);
}
