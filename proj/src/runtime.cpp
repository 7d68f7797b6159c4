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

#include "ger/runtime.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>

#include "ger/error.hpp"
#include "ger/text.hpp"

namespace ger {

namespace {

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

RetryPolicy retry_from(const Config& c, const std::string& prefix) {
  RetryPolicy r;
  r.max_attempts = static_cast<int>(c.get_int(prefix + "max_attempts", r.max_attempts));
  r.initial_backoff = std::chrono::milliseconds(c.get_int(prefix + "backoff_ms", r.initial_backoff.count()));
  if (r.max_attempts < 1) throw ConfigError(prefix + "max_attempts must be >= 1");
  if (r.initial_backoff.count() < 0) throw ConfigError(prefix + "backoff_ms must be >= 0");
  return r;
}

int in_flight_from(const Config& c, const std::string& key) {
  const long n = c.get_int(key, 4);
  if (n < 1) throw ConfigError(key + " must be >= 1");
  return static_cast<int>(n);
}

bool disabled(const std::string& v) { return v.empty() || v == "none" || v == "off"; }

}  // namespace

EmbedderStack make_embedder(const Config& config) {
  EmbedderStack stack;
  const std::string kind = config.get_or("embed.kind", "hash");
  if (kind == "hash") {
    auto dim = config.get_int("embed.dimension", 64);
    if (dim < 2) throw ConfigError("embed.dimension must be >= 2");
    auto hash = std::make_unique<HashEmbedder>(static_cast<std::size_t>(dim));
    if (const std::string planted = config.get_path("embed.planted"); !planted.empty()) hash->load_planted(planted);
    stack.inner = std::move(hash);
  } else if (kind == "openai") {
    RemoteEmbeddingOptions o;
    o.endpoint = config.get_or("embed.endpoint", o.endpoint);
    o.model = config.get_or("embed.model", o.model);
    auto dim = config.get_int("embed.dimension", static_cast<long>(o.dimension));
    if (dim < 1) throw ConfigError("embed.dimension must be >= 1");
    o.dimension = static_cast<std::size_t>(dim);
    o.api_key = env_or_empty("GER_EMBED_API_KEY");
    o.max_in_flight = in_flight_from(config, "embed.max_in_flight");
    stack.inner = std::make_unique<RemoteEmbeddingProvider>(o);
  } else {
    throw ConfigError("embed.kind must be hash or openai: " + kind);
  }
  if (const std::string cache = config.get_path("embed.cache"); !cache.empty()) {
    stack.cached = std::make_unique<CachedEmbeddingProvider>(*stack.inner, cache);
  }
  return stack;
}

RetrievalConfig retrieval_config(const Config& config) {
  RetrievalConfig r;
  r.node_threshold = config.get_double("retrieval.tau_node", r.node_threshold);
  r.triple_threshold = config.get_double("retrieval.tau_triple", r.triple_threshold);
  if (auto agg = config.get("retrieval.aggregation")) {
    auto parsed = parse_aggregation(*agg);
    if (!parsed) throw ConfigError("retrieval.aggregation must be mean, min or geo: " + *agg);
    r.aggregation = *parsed;
  }
  r.validate();
  return r;
}

PromptCatalog load_catalog(const Config& config) {
  PromptCatalog catalog = PromptCatalog::defaults();
  const std::string path = config.get_path("prompts.catalog");
  if (!path.empty()) catalog = PromptCatalog::load(path);
  for (TemplateId id : kAllTemplates) {
    const std::string key = "fewshot." + std::string(to_string(id));
    const std::string file = config.get_path(key);
    if (!file.empty()) catalog.set_few_shot(id, read_file(file));
  }
  return catalog;
}

Runtime::Runtime(const Config& config, const std::string& call_log_path)
    : config_(config), catalog_(load_catalog(config)) {
  if (const std::string p = config.get_path("cache.responses"); !p.empty()) {
    cache_ = std::make_unique<ResponseCache>(p);
  }
  if (!call_log_path.empty()) log_ = std::make_unique<CallLog>(call_log_path);

  const std::string base_source = config.get_or("base.source", "llm");
  if (base_source == "llm") {
    const std::string name = config.get_or("base.provider", "");
    if (name.empty()) throw ConfigError("base.source = llm requires base.provider");
    modules_.base_chat = gateway_for(name);
    role_provider_["base"] = name;
  } else if (base_source == "file") {
    const std::string file = config.get_path("base.file");
    if (file.empty()) throw ConfigError("base.source = file requires base.file");
    base_file_ = PrecomputedLabelSource::load(file);
    modules_.base_file = &*base_file_;
  } else {
    throw ConfigError("base.source must be llm or file: " + base_source);
  }

  if (const std::string oracle = config.get_path("support.oracle_file"); !oracle.empty()) {
    oracle_ = PrecomputedLabelSource::load(oracle);
    modules_.support_oracle = &*oracle_;
  }
  if (config.get_bool("support.kg", true)) {
    embedder_ = make_embedder(config);
    modules_.kg_embedder = embedder_.get();
  }
  if (const std::string name = config.get_or("support.llm", "none"); !disabled(name)) {
    modules_.support_chat = gateway_for(name);
    role_provider_["support"] = name;
  }

  for (const char* role : {"correction", "discriminator"}) {
    const std::string name = config.get_or(std::string(role) + ".provider", "");
    if (name.empty()) throw ConfigError(std::string(role) + ".provider is required");
    role_provider_[role] = name;
  }
  modules_.correction = gateway_for(role_provider_["correction"]);
  modules_.discriminator = gateway_for(role_provider_["discriminator"]);

  modules_.retrieval = retrieval_config(config);
  const long workers = config.get_int("run.workers", 1);
  if (workers < 1) throw ConfigError("run.workers must be >= 1");
  modules_.workers = static_cast<int>(workers);
  modules_.validate();
}

Runtime::~Runtime() = default;

void Runtime::set_retrieval(const RetrievalConfig& retrieval) {
  retrieval.validate();
  modules_.retrieval = retrieval;
}

ChatProvider& Runtime::provider(const std::string& name) {
  if (auto it = providers_.find(name); it != providers_.end()) return *it->second;
  const std::string prefix = "provider." + name + ".";
  const auto kind = config_.get(prefix + "kind");
  if (!kind) throw ConfigError("provider '" + name + "' is not defined (missing " + prefix + "kind)");
  std::unique_ptr<ChatProvider> p;
  if (*kind == "mock") {
    auto mock = std::make_unique<MockChatProvider>(config_.get_or(prefix + "model", "mock"));
    if (const std::string script = config_.get_path(prefix + "script"); !script.empty()) mock->load_script(script);
    p = std::move(mock);
  } else if (*kind == "openai") {
    RemoteChatOptions o;
    o.endpoint = config_.get_or(prefix + "endpoint", o.endpoint);
    o.model = config_.get_or(prefix + "model", o.model);
    o.temperature = config_.get_double(prefix + "temperature", o.temperature);
    o.retry = retry_from(config_, prefix);
    o.max_in_flight = in_flight_from(config_, prefix + "max_in_flight");
    o.api_key = env_or_empty("GER_CHAT_API_KEY");
    p = std::make_unique<RemoteChatProvider>(o);
  } else {
    throw ConfigError(prefix + "kind must be mock or openai: " + *kind);
  }
  return *providers_.emplace(name, std::move(p)).first->second;
}

ChatGateway* Runtime::gateway_for(const std::string& provider_name) {
  if (auto it = gateways_.find(provider_name); it != gateways_.end()) return it->second.get();
  auto gw = std::make_unique<ChatGateway>(provider(provider_name), catalog_, cache_.get(), log_.get());
  return gateways_.emplace(provider_name, std::move(gw)).first->second.get();
}

std::vector<ProviderInfo> Runtime::providers() const {
  std::vector<ProviderInfo> out;
  for (const auto& [role, name] : role_provider_) {
    const auto& p = *providers_.at(name);
    out.push_back({role, p.name(), p.model()});
  }
  if (modules_.base_file) out.push_back({"base", "file", config_.get_or("base.file", "")});
  if (modules_.support_oracle) out.push_back({"support_oracle", "file", config_.get_or("support.oracle_file", "")});
  if (modules_.kg_embedder) out.push_back({"embed", modules_.kg_embedder->name(), modules_.kg_embedder->model()});
  std::sort(out.begin(), out.end(), [](const ProviderInfo& a, const ProviderInfo& b) {
    return std::tie(a.role, a.name, a.model) < std::tie(b.role, b.name, b.model);
  });
  return out;
}

}  // namespace ger
