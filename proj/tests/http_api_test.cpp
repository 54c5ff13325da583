#include <gtest/gtest.h>

#include <thread>

#include "nlq/http_api.hpp"
#include "support/fixture.hpp"

namespace nlq {
namespace {

class HttpApi : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    server_ = make_http_server(testing::fixture_engine()).release();
    port_ = server_->bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = new std::thread([] { server_->listen_after_bind(); });
    server_->wait_until_ready();
  }

  static void TearDownTestSuite() {
    server_->stop();
    thread_->join();
    delete thread_;
    delete server_;
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(10, 0);
    return c;
  }

  static inline httplib::Server* server_ = nullptr;
  static inline std::thread* thread_ = nullptr;
  static inline int port_ = 0;
};

TEST_F(HttpApi, Health) {
  auto res = client().Get("/healthz");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "ok");
}

TEST_F(HttpApi, QueryAnswered) {
  auto res = client().Post("/api/query", R"({"question":"what are the italian restaurants?"})",
                           "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
  auto j = nlohmann::json::parse(res->body);
  EXPECT_EQ(j["status"], "answered");
  EXPECT_EQ(j["columns"], nlohmann::json::array({"restaurant_name"}));
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_TRUE(j["sql"].is_string());
}

TEST_F(HttpApi, CannotAnswerIsStill200) {
  auto res = client().Post("/api/query", R"({"question":"sing me a song"})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  auto j = nlohmann::json::parse(res->body);
  EXPECT_EQ(j["status"], "cannot_answer");
  EXPECT_TRUE(j["sql"].is_null());
  EXPECT_TRUE(j["message"].is_string());
}

TEST_F(HttpApi, BadRequests) {
  for (const char* body : {"{}", "not json", "[1,2]", R"({"question": 42})", ""}) {
    auto res = client().Post("/api/query", body, "application/json");
    ASSERT_TRUE(res) << body;
    EXPECT_EQ(res->status, 400) << body;
    EXPECT_TRUE(nlohmann::json::parse(res->body).contains("error"));
  }
}

TEST_F(HttpApi, EmptyQuestionIsAnErrorStatus) {
  auto res = client().Post("/api/query", R"({"question":""})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(nlohmann::json::parse(res->body)["status"], "error");
}

TEST_F(HttpApi, Schema) {
  auto res = client().Get("/api/schema");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  auto j = nlohmann::json::parse(res->body);
  ASSERT_EQ(j["tables"].size(), 2u);
  EXPECT_EQ(j["tables"][1]["name"], "cuisines");
}

TEST_F(HttpApi, Preflight) {
  auto res = client().Options("/api/query");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 204);
}

TEST_F(HttpApi, ConcurrentRequests) {
  std::vector<std::thread> workers;
  std::atomic<int> ok{0};
  for (int i = 0; i < 8; ++i) {
    workers.emplace_back([&] {
      auto c = client();
      for (int k = 0; k < 5; ++k) {
        auto res = c.Post("/api/query", R"({"question":"which restaurants serve seafood"})",
                          "application/json");
        if (res && res->status == 200 &&
            nlohmann::json::parse(res->body)["rows"] == nlohmann::json::array({{"Atlantic Dishes"}})) {
          ++ok;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  EXPECT_EQ(ok.load(), 40);
}

}  // namespace
}  // namespace nlq
