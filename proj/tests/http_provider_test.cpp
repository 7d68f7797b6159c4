// Copyright 2026 The GER Authors.
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
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "ger/embed.hpp"
#include "ger/error.hpp"
#include "ger/llm.hpp"

namespace ger {
namespace {

using nlohmann::json;

// Local OpenAI-style server. The first `failures` requests answer with
// `failure_status`.
class FakeServer {
 public:
  FakeServer() {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      handle(req, res, [](const json& body) {
        const std::string prompt = body.at("messages").at(0).at("content").get<std::string>();
        return json{{"choices", {{{"message", {{"role", "assistant"}, {"content", "echo: " + prompt}}}}}}};
      });
    });
    server_.Post("/v1/embeddings", [this](const httplib::Request& req, httplib::Response& res) {
      handle(req, res, [](const json& body) {
        const std::string input = body.at("input").get<std::string>();
        return json{{"data", {{{"embedding", {static_cast<double>(input.size()), 0.0, 1.0}}}}}};
      });
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~FakeServer() {
    server_.stop();
    thread_.join();
  }

  std::string url(const std::string& path) const { return "http://127.0.0.1:" + std::to_string(port_) + path; }

  std::atomic<int> failures{0};
  int failure_status = 503;
  std::atomic<int> hits{0};
  std::string last_auth;
  json last_body;

 private:
  template <typename F>
  void handle(const httplib::Request& req, httplib::Response& res, F respond) {
    ++hits;
    {
      std::lock_guard lock(mu_);
      last_auth = req.get_header_value("Authorization");
      last_body = json::parse(req.body);
    }
    if (failures > 0) {
      --failures;
      res.status = failure_status;
      res.set_content("{\"error\": \"busy\"}", "application/json");
      return;
    }
    res.set_content(respond(json::parse(req.body)).dump(), "application/json");
  }

  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::mutex mu_;
};

RetryPolicy fast_retry(int attempts) {
  RetryPolicy r;
  r.max_attempts = attempts;
  r.initial_backoff = std::chrono::milliseconds(1);
  return r;
}

TEST(RemoteChat, SendsOpenAiRequestWithBearerKey) {
  FakeServer server;
  RemoteChatOptions o;
  o.endpoint = server.url("/v1/chat/completions");
  o.model = "test-model";
  o.api_key = "sk-test";
  o.retry = fast_retry(1);
  RemoteChatProvider provider(o);
  EXPECT_EQ(provider.chat({TemplateId::BasePredict, "k", "hello"}), "echo: hello");
  EXPECT_EQ(server.last_auth, "Bearer sk-test");
  EXPECT_EQ(server.last_body.at("model"), "test-model");
  EXPECT_EQ(server.last_body.at("temperature"), 0.0);
  EXPECT_EQ(server.last_body.at("messages").at(0).at("role"), "user");
}

TEST(RemoteChat, RetriesServerErrorsThenSucceeds) {
  FakeServer server;
  server.failures = 2;
  RemoteChatOptions o;
  o.endpoint = server.url("/v1/chat/completions");
  o.retry = fast_retry(3);
  RemoteChatProvider provider(o);
  EXPECT_EQ(provider.chat({TemplateId::Rethink, "k", "x"}), "echo: x");
  EXPECT_EQ(server.hits, 3);
  EXPECT_EQ(provider.requests(), 3);
}

TEST(RemoteChat, GivesUpAfterRetryBudget) {
  FakeServer server;
  server.failures = 10;
  server.failure_status = 429;
  RemoteChatOptions o;
  o.endpoint = server.url("/v1/chat/completions");
  o.retry = fast_retry(2);
  RemoteChatProvider provider(o);
  EXPECT_THROW(provider.chat({TemplateId::Rethink, "k", "x"}), ProviderError);
  EXPECT_EQ(server.hits, 2);
}

TEST(RemoteChat, ClientErrorsAreNotRetried) {
  FakeServer server;
  server.failures = 1;
  server.failure_status = 401;
  RemoteChatOptions o;
  o.endpoint = server.url("/v1/chat/completions");
  o.retry = fast_retry(3);
  RemoteChatProvider provider(o);
  EXPECT_THROW(provider.chat({TemplateId::Rethink, "k", "x"}), ProviderError);
  EXPECT_EQ(server.hits, 1);
}

TEST(RemoteChat, UnreachableEndpointIsProviderError) {
  RemoteChatOptions o;
  o.endpoint = "http://127.0.0.1:1/v1/chat/completions";
  o.retry = fast_retry(2);
  RemoteChatProvider provider(o);
  EXPECT_THROW(provider.chat({TemplateId::Rethink, "k", "x"}), ProviderError);
}

TEST(RemoteChat, CachedGatewaySkipsNetwork) {
  FakeServer server;
  RemoteChatOptions o;
  o.endpoint = server.url("/v1/chat/completions");
  o.retry = fast_retry(1);
  RemoteChatProvider provider(o);
  const PromptCatalog catalog = PromptCatalog::defaults();
  ResponseCache cache;
  ChatGateway gw(provider, catalog, &cache);
  const Bindings b{{"reference_story", "s"}, {"query", "q"}};
  const auto first = gw.complete(TemplateId::BasePredict, "k", b);
  const auto second = gw.complete(TemplateId::BasePredict, "k", b);
  EXPECT_EQ(first.text, second.text);
  EXPECT_EQ(server.hits, 1);
}

TEST(RemoteEmbedding, ParsesAndNormalizes) {
  FakeServer server;
  RemoteEmbeddingOptions o;
  o.endpoint = server.url("/v1/embeddings");
  o.dimension = 3;
  o.api_key = "k";
  o.retry = fast_retry(1);
  RemoteEmbeddingProvider provider(o);
  const auto v = provider.embed("  The  Zoo ");
  EXPECT_EQ(server.last_body.at("input"), "the zoo");
  EXPECT_EQ(server.last_body.at("model"), "all-MiniLM-L6-v2");
  EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  EXPECT_NEAR(v.values[0], 7.0 / std::sqrt(50.0), 1e-12);
}

TEST(RemoteEmbedding, DimensionMismatchIsReported) {
  FakeServer server;
  RemoteEmbeddingOptions o;
  o.endpoint = server.url("/v1/embeddings");
  o.dimension = 384;
  o.retry = fast_retry(1);
  RemoteEmbeddingProvider provider(o);
  EXPECT_THROW(provider.embed("zoo"), DimensionMismatch);
}

TEST(Endpoint, Parse) {
  const auto e = Endpoint::parse("https://api.example.com:8443/v1/chat/completions");
  EXPECT_EQ(e.scheme_host_port, "https://api.example.com:8443");
  EXPECT_EQ(e.path, "/v1/chat/completions");
  EXPECT_THROW(Endpoint::parse("api.example.com/v1"), ConfigError);
}

}  // namespace
}  // namespace ger
