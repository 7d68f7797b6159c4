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

#include "ger/http_json.hpp"

#include <thread>

#include "httplib.h"
#include "ger/error.hpp"

namespace ger {

using nlohmann::json;

Endpoint Endpoint::parse(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint '" + url + "' has no scheme");
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

JsonHttpClient::JsonHttpClient(std::string url, std::string api_key, RetryPolicy retry, int max_in_flight,
                               std::chrono::seconds timeout)
    : url_(std::move(url)),
      endpoint_(Endpoint::parse(url_)),
      api_key_(std::move(api_key)),
      retry_(retry),
      timeout_(timeout),
      in_flight_(std::make_unique<std::counting_semaphore<>>(std::max(1, max_in_flight))) {
  if (retry_.max_attempts < 1) throw ConfigError("retry budget must allow at least one attempt");
}

JsonHttpClient::~JsonHttpClient() = default;

json JsonHttpClient::post(const json& body) {
  const std::string payload = body.dump();
  auto backoff = retry_.initial_backoff;
  std::string last_error;
  for (int attempt = 1; attempt <= retry_.max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(backoff);
      backoff = std::chrono::milliseconds(static_cast<long long>(backoff.count() * retry_.backoff_multiplier));
    }
    ++attempts_;
    httplib::Result res;
    {
      in_flight_->acquire();
      httplib::Client client(endpoint_.scheme_host_port);
      client.set_connection_timeout(timeout_);
      client.set_read_timeout(timeout_);
      httplib::Headers headers;
      if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
      res = client.Post(endpoint_.path, headers, payload, "application/json");
      in_flight_->release();
    }
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw ProviderError(url_ + ": HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 512));
    }
    try {
      return json::parse(res->body);
    } catch (const json::parse_error& e) {
      throw ProviderError(url_ + ": response is not JSON: " + e.what());
    }
  }
  throw ProviderError(url_ + ": giving up after " + std::to_string(retry_.max_attempts) + " attempts (" +
                      last_error + ")");
}

}  // namespace ger
