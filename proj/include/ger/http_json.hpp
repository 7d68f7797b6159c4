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

#pragma once

#include <atomic>
#include <chrono>
#include <memory>
#include <semaphore>
#include <string>

#include "json.hpp"

namespace ger {

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  double backoff_multiplier = 2.0;
};

// scheme://host[:port]/path split into the parts cpp-httplib wants.
struct Endpoint {
  std::string scheme_host_port;
  std::string path;

  static Endpoint parse(const std::string& url);
};

// POSTs JSON documents to one endpoint with bearer auth, exponential
// backoff on transport errors, 429 and 5xx, and a cap on requests in
// flight across threads. Throws ProviderError once the budget is spent.
class JsonHttpClient {
 public:
  JsonHttpClient(std::string url, std::string api_key, RetryPolicy retry, int max_in_flight,
                 std::chrono::seconds timeout = std::chrono::seconds(60));
  ~JsonHttpClient();

  nlohmann::json post(const nlohmann::json& body);

  int attempts() const { return attempts_; }

 private:
  std::string url_;
  Endpoint endpoint_;
  std::string api_key_;
  RetryPolicy retry_;
  std::chrono::seconds timeout_;
  std::unique_ptr<std::counting_semaphore<>> in_flight_;
  std::atomic<int> attempts_{0};
};

}  // namespace ger
