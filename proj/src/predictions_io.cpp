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

#include "ger/predictions_io.hpp"

#include <algorithm>

#include "ger/error.hpp"
#include "ger/text.hpp"

namespace ger {

using nlohmann::json;

namespace {

json ids_json(const SupportEventSet& s) {
  auto ids = triple_ids(s);
  std::sort(ids.begin(), ids.end());
  return ids;
}

SupportEventSet ids_from_json(const json& j) {
  SupportEventSet s;
  for (const auto& id : j) s.insert(SupportKey{id.get<std::string>(), {}, {}, {}});
  return s;
}

template <typename T, typename ParseFn>
T parse_enum(const json& j, const char* field, ParseFn fn) {
  const std::string raw = j.at(field).get<std::string>();
  auto v = fn(raw);
  if (!v) throw SchemaError(std::string("prediction: bad ") + field + " '" + raw + "'");
  return *v;
}

}  // namespace

json prediction_to_json(const PipelinePrediction& p, bool full_trace) {
  json trace = json::array();
  for (const auto& step : p.trace) {
    json s = {{"template", to_string(step.template_id)},
              {"prompt_hash", step.prompt_hash},
              {"parsed", step.parsed},
              {"warnings", step.warnings}};
    if (full_trace) {
      s["prompt"] = step.prompt;
      s["response"] = step.response;
    }
    trace.push_back(std::move(s));
  }
  json j = {{"pair_id", p.key.pair_id},
            {"direction", short_name(p.key.direction)},
            {"triple_id", p.key.triple_id},
            {"gold_label", p.gold_label ? json(to_string(*p.gold_label)) : json(nullptr)}};
  if (p.failure) {
    j["failure"] = *p.failure;
    j["trace"] = std::move(trace);
    j["warnings"] = p.warnings;
    return j;
  }
  j["base_label"] = to_string(p.base_label);
  j["kg_support"] = ids_json(p.kg_support);
  j["llm_support"] = ids_json(p.llm_support);
  j["fused_support"] = ids_json(p.fused_support);
  j["support_label"] = to_string(p.support_label);
  j["correction_branch"] = to_string(p.correction_branch);
  j["final_relevance"] = to_string(p.final_relevance);
  j["final_event_type"] = to_string(p.final_event_type);
  j["trace"] = std::move(trace);
  j["warnings"] = p.warnings;
  return j;
}

PipelinePrediction prediction_from_json(const json& j) {
  try {
    PipelinePrediction p;
    p.key.pair_id = j.at("pair_id").get<std::string>();
    p.key.direction = parse_enum<Direction>(j, "direction", parse_direction);
    p.key.triple_id = j.at("triple_id").get<std::string>();
    if (j.contains("gold_label") && !j["gold_label"].is_null()) {
      p.gold_label = parse_enum<EventType>(j, "gold_label", parse_event_type);
    }
    if (j.contains("warnings")) p.warnings = j["warnings"].get<std::vector<std::string>>();
    if (j.contains("trace")) {
      for (const auto& s : j["trace"]) {
        TraceStep step;
        step.template_id = parse_enum<TemplateId>(s, "template", parse_template_id);
        step.prompt_hash = s.at("prompt_hash").get<std::string>();
        step.parsed = s.at("parsed").get<std::string>();
        step.warnings = s.value("warnings", std::vector<std::string>{});
        step.prompt = s.value("prompt", std::string());
        step.response = s.value("response", std::string());
        p.trace.push_back(std::move(step));
      }
    }
    if (j.contains("failure")) {
      p.failure = j["failure"].get<std::string>();
      return p;
    }
    p.base_label = parse_enum<RelevanceLabel>(j, "base_label", parse_relevance_label);
    p.kg_support = ids_from_json(j.at("kg_support"));
    p.llm_support = ids_from_json(j.at("llm_support"));
    p.fused_support = ids_from_json(j.at("fused_support"));
    p.support_label = parse_enum<RelevanceLabel>(j, "support_label", parse_relevance_label);
    p.correction_branch = parse_enum<CorrectionBranch>(j, "correction_branch", parse_correction_branch);
    p.final_relevance = parse_enum<RelevanceLabel>(j, "final_relevance", parse_relevance_label);
    p.final_event_type = parse_enum<EventType>(j, "final_event_type", parse_event_type);
    return p;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("prediction record: ") + e.what());
  }
}

std::string predictions_to_jsonl(const std::vector<PipelinePrediction>& preds, bool full_trace) {
  std::string out;
  for (const auto& p : preds) out += prediction_to_json(p, full_trace).dump() + "\n";
  return out;
}

void write_predictions(const std::string& path, const std::vector<PipelinePrediction>& preds, bool full_trace) {
  write_file(path, predictions_to_jsonl(preds, full_trace));
}

std::vector<PipelinePrediction> read_predictions(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<PipelinePrediction> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(start, end - start);
    start = end + 1;
    if (collapse_whitespace(line).empty()) continue;
    try {
      out.push_back(prediction_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      throw SchemaError("predictions '" + path + "': " + e.what());
    }
  }
  return out;
}

}  // namespace ger
