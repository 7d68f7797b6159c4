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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ger/corpus.hpp"
#include "ger/embed.hpp"
#include "ger/graph.hpp"
#include "ger/llm.hpp"
#include "ger/precomputed.hpp"
#include "ger/retrieval.hpp"
#include "ger/types.hpp"

namespace ger {

enum class CorrectionBranch { Agree, Rethink, Explore };

std::string_view to_string(CorrectionBranch b);
std::optional<CorrectionBranch> parse_correction_branch(std::string_view text);

// One LLM exchange of an instance. prompt/response are kept in memory and
// only serialized on request.
struct TraceStep {
  TemplateId template_id = TemplateId::BasePredict;
  std::string prompt_hash;
  std::string parsed;
  std::vector<std::string> warnings;
  std::string prompt;
  std::string response;
};

struct PipelinePrediction {
  InstanceKey key;
  std::optional<EventType> gold_label;
  RelevanceLabel base_label = RelevanceLabel::Irrelevant;
  SupportEventSet kg_support;
  SupportEventSet llm_support;
  SupportEventSet fused_support;
  RelevanceLabel support_label = RelevanceLabel::Irrelevant;
  CorrectionBranch correction_branch = CorrectionBranch::Agree;
  RelevanceLabel final_relevance = RelevanceLabel::Irrelevant;
  EventType final_event_type = EventType::Forgotten;
  std::vector<TraceStep> trace;
  // Warnings not tied to one exchange (fallbacks, unknown oracle ids).
  std::vector<std::string> warnings;
  // Set when the instance could not be classified; such predictions are
  // reported but excluded from metrics.
  std::optional<std::string> failure;

  bool ok() const { return !failure.has_value(); }
};

// The modules a run is assembled from. Pointers are borrowed; a null
// pointer disables that source. The ground-truth support oracle, when set,
// replaces both support classifiers.
struct PipelineModules {
  ChatGateway* base_chat = nullptr;
  const PrecomputedLabelSource* base_file = nullptr;

  EmbeddingProvider* kg_embedder = nullptr;
  ChatGateway* support_chat = nullptr;
  const PrecomputedLabelSource* support_oracle = nullptr;

  ChatGateway* correction = nullptr;
  ChatGateway* discriminator = nullptr;

  RetrievalConfig retrieval;
  int workers = 1;

  // Throws ConfigError.
  void validate() const;
};

struct SupportResult {
  SupportEventSet kg;
  SupportEventSet llm;
  SupportEventSet fused;
  RelevanceLabel label = RelevanceLabel::Irrelevant;
};

class GerPipeline {
 public:
  explicit GerPipeline(PipelineModules modules);

  // Each step appends its LLM exchanges to `p.trace`. base_predict and
  // support_predict throw once a reply stays unparsable after one retry;
  // correct and map_label fall back and record a warning instead.
  RelevanceLabel base_predict(const QueryInstance& instance, PipelinePrediction& p);
  SupportResult support_predict(const QueryInstance& instance, const PersonalKg& kg, PipelinePrediction& p);
  std::pair<RelevanceLabel, CorrectionBranch> correct(const QueryInstance& instance, RelevanceLabel base_label,
                                                      RelevanceLabel support_label,
                                                      const SupportEventSet& fused_support, PipelinePrediction& p);
  EventType map_label(const QueryInstance& instance, RelevanceLabel final_relevance, PipelinePrediction& p);

  // All four stages for one instance; failures are captured in the result.
  PipelinePrediction predict(const QueryInstance& instance, const PersonalKg& kg);

  // Predictions in corpus order. Each reference story's KG is built once.
  std::vector<PipelinePrediction> run(const Corpus& corpus);

  const PipelineModules& modules() const { return modules_; }

 private:
  PipelineModules modules_;
};

// Reference story text as presented to the LLM, one sentence per line.
std::string render_reference_story(const Story& story);

}  // namespace ger
