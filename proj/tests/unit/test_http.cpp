// Copyright 2026 The ValueCompass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <httplib.h>
#include <nlohmann/json.hpp>
#include <thread>

#include "valuecompass/catalog.hpp"
#include "valuecompass/gateway.hpp"

namespace valuecompass {
namespace {

class LocalEndpoint : public ::testing::Test {
 protected:
  void SetUp() override {
    setenv("VALUECOMPASS_TEST_KEY", "secret-token", 1);
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      auth_header = req.get_header_value("Authorization");
      last_body = req.body;
      int n = hits++;
      if (mode == "flaky" && n < 2) {
        res.status = 500;
        return;
      }
      if (mode == "throttle" && n == 0) {
        res.status = 429;
        res.set_header("Retry-After", "0");
        return;
      }
      if (mode == "auth") {
        res.status = 401;
        return;
      }
      if (mode == "bad_request") {
        res.status = 400;
        return;
      }
      nlohmann::json body{{"choices", {{{"message", {{"content", "{\"score\": 1}"}}}}}}};
      res.set_content(body.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
    unsetenv("VALUECOMPASS_TEST_KEY");
  }

  ModelConfig config() const {
    ModelConfig c;
    c.endpoint_url = "http://127.0.0.1:" + std::to_string(port_) + "/v1/";
    c.model_id = "local";
    c.credential_ref = "VALUECOMPASS_TEST_KEY";
    c.timeout_seconds = 5;
    c.backoff_initial_ms = 1;
    c.backoff_max_ms = 2;
    return c;
  }

  Prompt prompt() const {
    PromptEngine engine;
    return engine.render(context_at(2), default_catalog()[3], VariantKey::from_id(6));
  }

  std::string mode = "ok";
  std::atomic<int> hits{0};
  std::string auth_header;
  std::string last_body;

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

void no_sleep(std::chrono::milliseconds) {}

TEST_F(LocalEndpoint, SendsBearerTokenAndParses) {
  HttpBackend backend(config());
  auto record = query_model(prompt(), config(), backend, no_sleep);
  EXPECT_EQ(record.raw_score, Answer::numeric(1));
  EXPECT_EQ(auth_header, "Bearer secret-token");
  EXPECT_EQ(nlohmann::json::parse(last_body)["model"], "local");
  EXPECT_EQ(hits, 1);
}

TEST_F(LocalEndpoint, RetriesServerErrors) {
  mode = "flaky";
  HttpBackend backend(config());
  auto record = query_model(prompt(), config(), backend, no_sleep);
  EXPECT_EQ(record.raw_score, Answer::numeric(1));
  EXPECT_EQ(hits, 3);
}

TEST_F(LocalEndpoint, ReadsRetryAfter) {
  mode = "throttle";
  HttpBackend backend(config());
  auto first = backend.send(prompt(), config());
  EXPECT_EQ(first.status, TransportResult::Status::http_error);
  EXPECT_EQ(first.http_status, 429);
  ASSERT_TRUE(first.retry_after_seconds.has_value());
  EXPECT_EQ(*first.retry_after_seconds, 0.0);
  EXPECT_EQ(backend.send(prompt(), config()).status, TransportResult::Status::ok);
}

TEST_F(LocalEndpoint, UnauthorizedIsFatal) {
  mode = "auth";
  HttpBackend backend(config());
  EXPECT_THROW(query_model(prompt(), config(), backend, no_sleep), AuthenticationError);
  EXPECT_EQ(hits, 1);
}

TEST_F(LocalEndpoint, BadRequestIsMissing) {
  mode = "bad_request";
  HttpBackend backend(config());
  auto record = query_model(prompt(), config(), backend, no_sleep);
  EXPECT_TRUE(record.raw_score.is_missing());
  EXPECT_EQ(hits, 1);
}

TEST(HttpBackendSetup, MissingCredential) {
  unsetenv("VALUECOMPASS_NO_SUCH_KEY");
  ModelConfig c;
  c.endpoint_url = "http://127.0.0.1:9";
  c.model_id = "m";
  c.credential_ref = "VALUECOMPASS_NO_SUCH_KEY";
  EXPECT_THROW(HttpBackend{c}, CredentialError);
}

TEST(HttpBackendSetup, UnreachableHostIsTransportError) {
  setenv("VALUECOMPASS_TEST_KEY", "k", 1);
  ModelConfig c;
  c.endpoint_url = "http://127.0.0.1:9";
  c.model_id = "m";
  c.credential_ref = "VALUECOMPASS_TEST_KEY";
  c.timeout_seconds = 1;
  HttpBackend backend(c);
  PromptEngine engine;
  auto p = engine.render(context_at(1), default_catalog()[0], VariantKey::from_id(1));
  auto result = backend.send(p, c);
  EXPECT_EQ(result.status, TransportResult::Status::transport_error);
  EXPECT_FALSE(result.error.empty());
  unsetenv("VALUECOMPASS_TEST_KEY");
}

}  // namespace
}  // namespace valuecompass
