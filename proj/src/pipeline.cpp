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

#include "ger/pipeline.hpp"

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <thread>

#include "ger/error.hpp"
#include "ger/parse.hpp"
#include "ger/text.hpp"

namespace ger {

std::string_view to_string(CorrectionBranch b) {
  switch (b) {
    case CorrectionBranch::Agree: return "Agree";
    case CorrectionBranch::Rethink: return "Rethink";
    case CorrectionBranch::Explore: return "Explore";
  }
  return "?";
}

std::optional<CorrectionBranch> parse_correction_branch(std::string_view text) {
  const std::string key = normalize_text(text);
  if (key == "agree") return CorrectionBranch::Agree;
  if (key == "rethink") return CorrectionBranch::Rethink;
  if (key == "explore") return CorrectionBranch::Explore;
  return std::nullopt;
}

void PipelineModules::validate() const {
  if ((base_chat == nullptr) == (base_file == nullptr)) {
    throw ConfigError("exactly one base source (chat provider or precomputed file) must be configured");
  }
  if (!support_oracle && !kg_embedder && !support_chat) {
    throw ConfigError("at least one support source must be enabled");
  }
  if (!correction) throw ConfigError("a correction provider is required");
  if (!discriminator) throw ConfigError("a discriminator provider is required");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  retrieval.validate();
}

std::string render_reference_story(const Story& story) {
  std::string out;
  for (const auto& s : story.sentences) {
    if (!out.empty()) out += '\n';
    out += collapse_whitespace(s);
  }
  return out;
}

namespace {

constexpr std::string_view kRelevanceReminder =
    "\n\nYour previous reply could not be read. Reply with one line only: ANSWER: Relevant or ANSWER: Irrelevant";
constexpr std::string_view kSupportReminder =
    "\n\nYour previous reply could not be read. Reply with one line only, such as ANSWER: 1, 3 or ANSWER: none";
constexpr std::string_view kConsistencyReminder =
    "\n\nYour previous reply could not be read. Reply with one line only: ANSWER: Consistent or ANSWER: "
    "Inconsistent";

std::string render_support_events(const SupportEventSet& fused, const Story& reference) {
  if (fused.empty()) return "(none)";
  std::string out;
  for (const auto& k : fused) {
    const EventTriple* t = reference.find_triple(k.triple_id);
    if (!out.empty()) out += '\n';
    out += "- " + (t ? render_query_sentence(*t) : k.subject + " " + k.predicate + " " + k.object);
  }
  return out;
}

Bindings base_bindings(const QueryInstance& instance) {
  return {{"reference_story", render_reference_story(*instance.reference)}, {"query", instance.query_text}};
}

// Sends a prompt, parses the reply, and retries once with a reminder when
// the reply is unparsable. Both exchanges are traced. Rethrows the
// ParseError of the second attempt.
template <typename Parse>
auto ask(ChatGateway& gateway, TemplateId id, const QueryInstance& instance, const Bindings& bindings,
         std::string_view reminder, Parse parse, PipelinePrediction& p) {
  const std::string key = instance.key().to_string();
  for (int attempt = 0;; ++attempt) {
    Completion c = gateway.complete(id, key, bindings, attempt == 0 ? std::string_view{} : reminder);
    TraceStep step{id, c.prompt_hash, {}, {}, c.prompt, c.text};
    try {
      auto [value, rendered, warnings] = parse(c.text);
      step.parsed = std::move(rendered);
      step.warnings = std::move(warnings);
      p.trace.push_back(std::move(step));
      return value;
    } catch (const ParseError& e) {
      step.parsed = "unparsable";
      step.warnings.push_back(e.what());
      p.trace.push_back(std::move(step));
      if (attempt == 1) throw;
    }
  }
}

auto relevance_parser() {
  return [](const std::string& text) {
    const RelevanceLabel l = parse_relevance(text);
    return std::tuple{l, std::string(to_string(l)), std::vector<std::string>{}};
  };
}

}  // namespace

GerPipeline::GerPipeline(PipelineModules modules) : modules_(modules) { modules_.validate(); }

RelevanceLabel GerPipeline::base_predict(const QueryInstance& instance, PipelinePrediction& p) {
  if (modules_.base_file) return modules_.base_file->label(instance.key());
  return ask(*modules_.base_chat, TemplateId::BasePredict, instance, base_bindings(instance), kRelevanceReminder,
             relevance_parser(), p);
}

SupportResult GerPipeline::support_predict(const QueryInstance& instance, const PersonalKg& kg,
                                           PipelinePrediction& p) {
  const Story& reference = *instance.reference;
  SupportResult r;
  if (modules_.support_oracle) {
    for (const auto& id : modules_.support_oracle->support_ids(instance.key())) {
      if (const EventTriple* t = reference.find_triple(id)) {
        r.fused.insert(support_key(*t));
      } else {
        p.warnings.push_back("oracle support id '" + id + "' is not a triple of the reference story");
      }
    }
    r.label = r.fused.empty() ? RelevanceLabel::Irrelevant : RelevanceLabel::Relevant;
    return r;
  }

  if (modules_.kg_embedder) {
    r.kg = support_events_kg(kg, instance.query_text, *modules_.kg_embedder, modules_.retrieval);
  }
  if (modules_.support_chat && !reference.triples.empty()) {
    // Events are presented as [1]..[n]; the model answers with those numbers.
    std::string events;
    std::set<std::string> valid;
    for (std::size_t i = 0; i < reference.triples.size(); ++i) {
      const std::string id = std::to_string(i + 1);
      valid.insert(id);
      if (!events.empty()) events += '\n';
      events += "[" + id + "] " + render_query_sentence(reference.triples[i]);
    }
    Bindings b = base_bindings(instance);
    b["reference_events"] = events;
    auto ids = ask(*modules_.support_chat, TemplateId::SupportClassify, instance, b, kSupportReminder,
                   [&](const std::string& text) {
                     ParsedSupportIds parsed = parse_support_ids(text, valid);
                     std::string rendered;
                     for (const auto& id : parsed.ids) rendered += (rendered.empty() ? "" : ",") + id;
                     return std::tuple{parsed.ids, rendered.empty() ? std::string("none") : rendered,
                                       parsed.warnings};
                   },
                   p);
    for (const auto& id : ids) r.llm.insert(support_key(reference.triples[std::stoul(id) - 1]));
  }

  if (modules_.kg_embedder && modules_.support_chat) {
    r.fused = intersect(r.kg, r.llm);
  } else {
    r.fused = modules_.kg_embedder ? r.kg : r.llm;
  }
  r.label = r.fused.empty() ? RelevanceLabel::Irrelevant : RelevanceLabel::Relevant;
  return r;
}

std::pair<RelevanceLabel, CorrectionBranch> GerPipeline::correct(const QueryInstance& instance,
                                                                 RelevanceLabel base_label,
                                                                 RelevanceLabel support_label,
                                                                 const SupportEventSet& fused_support,
                                                                 PipelinePrediction& p) {
  if (base_label == support_label) return {base_label, CorrectionBranch::Agree};
  const bool rethink = base_label == RelevanceLabel::Relevant;
  const CorrectionBranch branch = rethink ? CorrectionBranch::Rethink : CorrectionBranch::Explore;
  Bindings b = base_bindings(instance);
  b["support_events"] = render_support_events(fused_support, *instance.reference);
  try {
    const RelevanceLabel label = ask(*modules_.correction, rethink ? TemplateId::Rethink : TemplateId::Explore,
                                     instance, b, kRelevanceReminder, relevance_parser(), p);
    return {label, branch};
  } catch (const Error& e) {
    p.warnings.push_back(std::string(to_string(branch)) + " failed, keeping base label: " + e.what());
    return {base_label, branch};
  }
}

EventType GerPipeline::map_label(const QueryInstance& instance, RelevanceLabel final_relevance,
                                 PipelinePrediction& p) {
  if (instance.direction == Direction::TargetIsPre) {
    return final_relevance == RelevanceLabel::Relevant ? EventType::Unforgotten : EventType::Forgotten;
  }
  if (final_relevance == RelevanceLabel::Irrelevant) return EventType::Additional;
  try {
    return ask(*modules_.discriminator, TemplateId::ConsistencyDiscriminate, instance, base_bindings(instance),
               kConsistencyReminder,
               [](const std::string& text) {
                 const EventType t = parse_consistency(text);
                 return std::tuple{t, std::string(to_string(t)), std::vector<std::string>{}};
               },
               p);
  } catch (const Error& e) {
    p.warnings.push_back(std::string("discriminator failed, defaulting to Consistent: ") + e.what());
    return EventType::Consistent;
  }
}

PipelinePrediction GerPipeline::predict(const QueryInstance& instance, const PersonalKg& kg) {
  PipelinePrediction p;
  p.key = instance.key();
  p.gold_label = instance.gold_label;
  try {
    p.base_label = base_predict(instance, p);
    SupportResult s = support_predict(instance, kg, p);
    p.kg_support = std::move(s.kg);
    p.llm_support = std::move(s.llm);
    p.fused_support = std::move(s.fused);
    p.support_label = s.label;
    std::tie(p.final_relevance, p.correction_branch) =
        correct(instance, p.base_label, p.support_label, p.fused_support, p);
    p.final_event_type = map_label(instance, p.final_relevance, p);
  } catch (const Error& e) {
    p.failure = e.what();
  }
  return p;
}

std::vector<PipelinePrediction> GerPipeline::run(const Corpus& corpus) {
  struct Job {
    QueryInstance instance;
    const PersonalKg* kg;
    std::string kg_error;
  };
  // Keyed by (pair index, reference role).
  std::map<std::pair<std::size_t, StoryRole>, std::unique_ptr<PersonalKg>> graphs;
  std::map<std::pair<std::size_t, StoryRole>, std::string> graph_errors;
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (auto& instance : instances_of(corpus[i])) {
      const auto slot = std::pair{i, instance.reference->role};
      if (!graphs.contains(slot) && !graph_errors.contains(slot)) {
        try {
          graphs[slot] = std::make_unique<PersonalKg>(build_kg(*instance.reference));
        } catch (const Error& e) {
          graph_errors[slot] = e.what();
        }
      }
      auto it = graphs.find(slot);
      jobs.push_back({std::move(instance), it == graphs.end() ? nullptr : it->second.get(),
                      it == graphs.end() ? graph_errors[slot] : std::string()});
    }
  }

  std::vector<PipelinePrediction> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Job& job = jobs[j];
      if (!job.kg) {
        out[j].key = job.instance.key();
        out[j].gold_label = job.instance.gold_label;
        out[j].failure = "knowledge graph construction failed: " + job.kg_error;
        continue;
      }
      out[j] = predict(job.instance, *job.kg);
    }
  };
  const int n = std::min<int>(modules_.workers, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  return out;
}

}  // namespace ger
