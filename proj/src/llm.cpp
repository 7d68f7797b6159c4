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

#include "ger/llm.hpp"

#include <chrono>
#include <ctime>

#include "json.hpp"
#include "ger/error.hpp"
#include "ger/text.hpp"

namespace ger {

using nlohmann::json;

std::string MockChatProvider::chat(const ChatRequest& request) {
  std::lock_guard lock(mu_);
  requests_.push_back(request);
  Key key{request.template_id, request.instance_key};
  auto it = script_.find(key);
  if (it == script_.end()) {
    key.second = "*";
    it = script_.find(key);
  }
  if (it == script_.end()) {
    throw ScriptError("mock has no response for " + std::string(to_string(request.template_id)) + " / '" +
                      request.instance_key + "'");
  }
  std::size_t& n = served_[Key{request.template_id, request.instance_key}];
  const auto& responses = it->second;
  const std::string& out = responses[std::min(n, responses.size() - 1)];
  ++n;
  return out;
}

void MockChatProvider::script(TemplateId id, std::string instance_key, std::string response) {
  std::lock_guard lock(mu_);
  script_[{id, std::move(instance_key)}].push_back(std::move(response));
}

void MockChatProvider::load_script(const std::string& path) {
  const std::string text = read_file(path);
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (collapse_whitespace(line).empty()) continue;
    try {
      json j = json::parse(line);
      auto id = parse_template_id(j.at("template").get<std::string>());
      if (!id) throw ConfigError("unknown template '" + j.at("template").get<std::string>() + "'");
      script(*id, j.at("key").get<std::string>(), j.at("response").get<std::string>());
    } catch (const json::exception& e) {
      throw ConfigError("mock script '" + path + "' line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::size_t MockChatProvider::calls() const {
  std::lock_guard lock(mu_);
  return requests_.size();
}

std::size_t MockChatProvider::calls(TemplateId id) const {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (const auto& r : requests_) n += r.template_id == id;
  return n;
}

std::size_t MockChatProvider::calls(TemplateId id, const std::string& instance_key) const {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (const auto& r : requests_) n += r.template_id == id && r.instance_key == instance_key;
  return n;
}

std::vector<ChatRequest> MockChatProvider::requests() const {
  std::lock_guard lock(mu_);
  return requests_;
}

RemoteChatProvider::RemoteChatProvider(RemoteChatOptions options)
    : options_(std::move(options)),
      client_(options_.endpoint, options_.api_key, options_.retry, options_.max_in_flight) {}

std::string RemoteChatProvider::chat(const ChatRequest& request) {
  json body = {{"model", options_.model},
               {"messages", json::array({{{"role", "user"}, {"content", request.prompt}}})},
               {"temperature", options_.temperature}};
  json response = client_.post(body);
  try {
    return response.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw ProviderError("chat response lacks choices[0].message.content: " + std::string(e.what()));
  }
}

ResponseCache::ResponseCache(std::string path) : path_(std::move(path)) {
  if (path_.empty()) return;
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      entries_[j.at("prompt_hash").get<std::string>()] = j.at("response").get<std::string>();
    } catch (const json::exception&) {
      // Torn last line of an interrupted run.
    }
  }
}

std::string ResponseCache::key(std::string_view model, std::string_view prompt) {
  std::string material(model);
  material += '\n';
  material += prompt;
  return sha256_hex(material);
}

std::optional<std::string> ResponseCache::get(std::string_view model, std::string_view prompt) const {
  const std::string k = key(model, prompt);
  std::lock_guard lock(mu_);
  if (auto it = entries_.find(k); it != entries_.end()) return it->second;
  return std::nullopt;
}

void ResponseCache::put(std::string_view model, std::string_view prompt, const std::string& response) {
  const std::string k = key(model, prompt);
  std::lock_guard lock(mu_);
  entries_[k] = response;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  out << json{{"prompt_hash", k}, {"model", std::string(model)}, {"response", response}}.dump() << '\n';
}

std::size_t ResponseCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

CallLog::CallLog(const std::string& path) : out_(path, std::ios::app) {
  if (!out_) throw Error("cannot open call log '" + path + "'");
}

void CallLog::record(TemplateId id, const std::string& instance_key, const std::string& model,
                     const std::string& prompt, const std::string& response, bool cached) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  json j = {{"timestamp", stamp}, {"template", to_string(id)}, {"key", instance_key}, {"model", model},
            {"prompt", prompt},   {"response", response},      {"cached", cached}};
  std::lock_guard lock(mu_);
  out_ << j.dump() << '\n';
  out_.flush();
}

ChatGateway::ChatGateway(ChatProvider& provider, const PromptCatalog& catalog, ResponseCache* cache, CallLog* log)
    : provider_(provider), catalog_(catalog), cache_(cache), log_(log) {}

Completion ChatGateway::complete(TemplateId id, const std::string& instance_key, Bindings bindings,
                                 std::string_view suffix) {
  if (!bindings.contains("few_shot_block")) {
    const std::string& block = catalog_.few_shot(id);
    bindings["few_shot_block"] = block.empty() ? "" : "\nExamples:\n" + block + "\n";
  }
  Completion c;
  c.prompt = catalog_.get(id).render(bindings);
  c.prompt += suffix;
  const std::string model = provider_.model();
  c.prompt_hash = ResponseCache::key(model, c.prompt);
  if (cache_) {
    if (auto hit = cache_->get(model, c.prompt)) {
      c.text = std::move(*hit);
      c.cached = true;
    }
  }
  if (!c.cached) {
    c.text = provider_.chat({id, instance_key, c.prompt});
    if (cache_) cache_->put(model, c.prompt, c.text);
  }
  if (log_) log_->record(id, instance_key, model, c.prompt, c.text, c.cached);
  return c;
}

}  // namespace ger
