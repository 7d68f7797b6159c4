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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ger/config.hpp"
#include "ger/embed.hpp"
#include "ger/llm.hpp"
#include "ger/pipeline.hpp"
#include "ger/precomputed.hpp"
#include "ger/prompts.hpp"

namespace ger {

struct ProviderInfo {
  std::string role;
  std::string name;
  std::string model;

  friend bool operator==(const ProviderInfo&, const ProviderInfo&) = default;
};

// The KG embedder described by the embed.* keys: the hash embedder by
// default, optionally wrapped in an on-disk cache.
struct EmbedderStack {
  std::unique_ptr<EmbeddingProvider> inner;
  std::unique_ptr<EmbeddingProvider> cached;

  EmbeddingProvider* get() const { return cached ? cached.get() : inner.get(); }
};
EmbedderStack make_embedder(const Config& config);

// Everything a pipeline run needs, assembled from a Config. Owns the
// providers, caches and gateways that PipelineModules points into, so it
// must outlive any pipeline built from modules().
class Runtime {
 public:
  // Throws ConfigError for inconsistent settings. API keys come from
  // GER_CHAT_API_KEY and GER_EMBED_API_KEY.
  explicit Runtime(const Config& config, const std::string& call_log_path = {});
  ~Runtime();

  Runtime(const Runtime&) = delete;
  Runtime& operator=(const Runtime&) = delete;

  const PipelineModules& modules() const { return modules_; }
  void set_retrieval(const RetrievalConfig& retrieval);

  const PromptCatalog& catalog() const { return catalog_; }
  std::vector<ProviderInfo> providers() const;

 private:
  ChatProvider& provider(const std::string& name);
  ChatGateway* gateway_for(const std::string& provider_name);

  const Config& config_;
  PromptCatalog catalog_;
  std::map<std::string, std::unique_ptr<ChatProvider>> providers_;
  std::map<std::string, std::unique_ptr<ChatGateway>> gateways_;
  std::unique_ptr<ResponseCache> cache_;
  std::unique_ptr<CallLog> log_;
  EmbedderStack embedder_;
  std::optional<PrecomputedLabelSource> base_file_;
  std::optional<PrecomputedLabelSource> oracle_;
  std::map<std::string, std::string> role_provider_;
  PipelineModules modules_;
};

// Retrieval settings from the retrieval.* keys, defaults otherwise.
RetrievalConfig retrieval_config(const Config& config);

// Prompt catalog named by prompts.catalog (built-in default otherwise) with
// the fewshot.<Template> files applied.
PromptCatalog load_catalog(const Config& config);

}  // namespace ger
