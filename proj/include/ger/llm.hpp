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

#include <cstddef>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ger/http_json.hpp"
#include "ger/prompts.hpp"

namespace ger {

struct ChatRequest {
  TemplateId template_id = TemplateId::BasePredict;
  // Identifies the instance the prompt belongs to; mocks match on it,
  // remote providers ignore it.
  std::string instance_key;
  std::string prompt;
};

class ChatProvider {
 public:
  virtual ~ChatProvider() = default;

  virtual std::string name() const = 0;
  virtual std::string model() const = 0;
  // Throws ProviderError (or ScriptError for mocks).
  virtual std::string chat(const ChatRequest& request) = 0;
};

// Scripted provider for tests and offline runs. Responses are keyed by
// (template, instance key); the key "*" matches any instance of a template.
// Several responses under one key are returned in order, the last one
// repeating. Unmatched requests throw ScriptError. Thread-safe.
class MockChatProvider : public ChatProvider {
 public:
  explicit MockChatProvider(std::string model = "mock") : model_(std::move(model)) {}

  std::string name() const override { return "mock"; }
  std::string model() const override { return model_; }
  std::string chat(const ChatRequest& request) override;

  void script(TemplateId id, std::string instance_key, std::string response);
  // JSON lines of {"template", "key", "response"}.
  void load_script(const std::string& path);

  std::size_t calls() const;
  std::size_t calls(TemplateId id) const;
  std::size_t calls(TemplateId id, const std::string& instance_key) const;
  // Prompts in arrival order.
  std::vector<ChatRequest> requests() const;

 private:
  using Key = std::pair<TemplateId, std::string>;

  std::string model_;
  mutable std::mutex mu_;
  std::map<Key, std::vector<std::string>> script_;
  std::map<Key, std::size_t> served_;
  std::vector<ChatRequest> requests_;
};

struct RemoteChatOptions {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model = "gpt-3.5-turbo-0125";
  std::string api_key;
  double temperature = 0.0;
  RetryPolicy retry;
  int max_in_flight = 4;
};

// OpenAI-compatible chat completions: POST {"model", "messages",
// "temperature"}, reads choices[0].message.content.
class RemoteChatProvider : public ChatProvider {
 public:
  explicit RemoteChatProvider(RemoteChatOptions options);

  std::string name() const override { return "openai-compatible"; }
  std::string model() const override { return options_.model; }
  std::string chat(const ChatRequest& request) override;

  int requests() const { return client_.attempts(); }

 private:
  RemoteChatOptions options_;
  JsonHttpClient client_;
};

// Persistent (model, prompt) -> response store. The file is append-only
// JSON lines of {"prompt_hash", "model", "response"}; an empty path keeps
// the cache in memory.
class ResponseCache {
 public:
  explicit ResponseCache(std::string path = {});

  static std::string key(std::string_view model, std::string_view prompt);

  std::optional<std::string> get(std::string_view model, std::string_view prompt) const;
  void put(std::string_view model, std::string_view prompt, const std::string& response);
  std::size_t size() const;

 private:
  std::string path_;
  mutable std::mutex mu_;
  std::map<std::string, std::string> entries_;
};

// Append-only JSON-lines log of every provider exchange with timestamps.
class CallLog {
 public:
  explicit CallLog(const std::string& path);

  void record(TemplateId id, const std::string& instance_key, const std::string& model, const std::string& prompt,
              const std::string& response, bool cached);

 private:
  std::mutex mu_;
  std::ofstream out_;
};

struct Completion {
  std::string text;
  std::string prompt;
  std::string prompt_hash;
  bool cached = false;
};

// Renders a template, consults the cache, then the provider.
class ChatGateway {
 public:
  ChatGateway(ChatProvider& provider, const PromptCatalog& catalog, ResponseCache* cache = nullptr,
              CallLog* log = nullptr);

  // {few_shot_block} is bound from the catalog unless given. `suffix` is
  // appended to the rendered prompt (used for the retry reminder). Throws
  // TemplateError and whatever the provider throws.
  Completion complete(TemplateId id, const std::string& instance_key, Bindings bindings,
                      std::string_view suffix = {});

  ChatProvider& provider() { return provider_; }
  const PromptCatalog& catalog() const { return catalog_; }

 private:
  ChatProvider& provider_;
  const PromptCatalog& catalog_;
  ResponseCache* cache_;
  CallLog* log_;
};

}  // namespace ger
