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

#include "ger/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ger/error.hpp"
#include "ger/text.hpp"

namespace ger {

using nlohmann::json;

std::string_view to_string(Aggregation a) {
  switch (a) {
    case Aggregation::Mean: return "mean";
    case Aggregation::Min: return "min";
    case Aggregation::GeometricMeanNonNeg: return "geo";
  }
  return "?";
}

std::optional<Aggregation> parse_aggregation(std::string_view text) {
  const std::string key = normalize_text(text);
  if (key == "mean") return Aggregation::Mean;
  if (key == "min") return Aggregation::Min;
  if (key == "geo" || key == "geometric" || key == "geometricmeannonneg") return Aggregation::GeometricMeanNonNeg;
  return std::nullopt;
}

void RetrievalConfig::validate() const {
  auto in_range = [](double v) { return v >= -1.0 && v <= 1.0; };
  if (!in_range(node_threshold)) throw ConfigError("node threshold must lie in [-1, 1]");
  if (!in_range(triple_threshold)) throw ConfigError("triple threshold must lie in [-1, 1]");
}

SupportKey support_key(const EventTriple& t) {
  return {t.triple_id, normalize_text(t.subject), normalize_text(t.predicate),
          t.object ? normalize_text(*t.object) : std::string()};
}

SupportEventSet intersect(const SupportEventSet& a, const SupportEventSet& b) {
  SupportEventSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

std::vector<std::string> triple_ids(const SupportEventSet& s) {
  std::vector<std::string> ids;
  for (const auto& k : s) ids.push_back(k.triple_id);
  return ids;
}

std::vector<ScoredNode> score_nodes(const PersonalKg& kg, std::string_view query_text, EmbeddingProvider& provider) {
  const EmbeddingVector query = provider.embed(query_text);
  std::vector<ScoredNode> out;
  out.reserve(kg.nodes().size());
  for (const auto& n : kg.nodes()) {
    double best = -1.0;
    for (const auto& form : n.surface_forms) best = std::max(best, cosine(query, provider.embed(form)));
    out.push_back({n.node_id, best});
  }
  std::sort(out.begin(), out.end(), [](const ScoredNode& a, const ScoredNode& b) { return a.node_id < b.node_id; });
  return out;
}

std::vector<ScoredNode> key_nodes(std::span<const ScoredNode> scored, double threshold) {
  std::vector<ScoredNode> out;
  for (const auto& n : scored) {
    if (n.score >= threshold) out.push_back(n);
  }
  return out;
}

std::vector<std::string> candidate_triples(const PersonalKg& kg, std::span<const ScoredNode> key) {
  std::set<std::string> ids;
  for (const auto& n : key) {
    for (const auto& t : triples_containing(kg, n.node_id)) ids.insert(t.triple_id);
  }
  return {ids.begin(), ids.end()};
}

double triple_score(std::span<const double> node_scores, Aggregation aggregation) {
  if (node_scores.empty()) return 0.0;
  switch (aggregation) {
    case Aggregation::Mean: {
      double sum = 0.0;
      for (double s : node_scores) sum += s;
      return sum / static_cast<double>(node_scores.size());
    }
    case Aggregation::Min:
      return *std::min_element(node_scores.begin(), node_scores.end());
    case Aggregation::GeometricMeanNonNeg: {
      double log_sum = 0.0;
      for (double s : node_scores) {
        const double c = std::clamp(s, 0.0, 1.0);
        if (c == 0.0) return 0.0;
        log_sum += std::log(c);
      }
      return std::exp(log_sum / static_cast<double>(node_scores.size()));
    }
  }
  return 0.0;
}

json RetrievalTrace::to_json(const PersonalKg& kg) const {
  json jnodes = json::array();
  for (const auto& n : nodes) {
    const auto& node = kg.node(n.node_id);
    jnodes.push_back({{"node_id", n.node_id},
                      {"role", to_string(node.role)},
                      {"surface_forms", node.surface_forms},
                      {"score", n.score}});
  }
  json jkey = json::array();
  for (const auto& n : key) jkey.push_back(n.node_id);
  json jcand = json::array();
  for (const auto& t : candidates) {
    jcand.push_back({{"triple_id", t.triple_id}, {"score", t.score}, {"node_scores", t.node_scores}});
  }
  json jsel = json::array();
  for (const auto& k : selected) {
    jsel.push_back({{"triple_id", k.triple_id},
                    {"subject", k.subject},
                    {"predicate", k.predicate},
                    {"object", k.object.empty() ? json(nullptr) : json(k.object)}});
  }
  return {{"nodes", jnodes}, {"key_nodes", jkey}, {"candidates", jcand}, {"support_events", jsel}};
}

RetrievalTrace retrieve_support(const PersonalKg& kg, std::string_view query_text, EmbeddingProvider& provider,
                                const RetrievalConfig& cfg) {
  cfg.validate();
  RetrievalTrace trace;
  if (kg.nodes().empty()) return trace;
  trace.nodes = score_nodes(kg, query_text, provider);
  trace.key = key_nodes(trace.nodes, cfg.node_threshold);
  std::map<std::string, double> score_of;
  for (const auto& n : trace.nodes) score_of[n.node_id] = n.score;
  for (const auto& id : candidate_triples(kg, trace.key)) {
    const KgTriple& t = kg.triple(id);
    ScoredTriple st{id, 0.0, {score_of.at(t.subject_node), score_of.at(t.predicate_node)}};
    if (t.object_node) st.node_scores.push_back(score_of.at(*t.object_node));
    st.score = triple_score(st.node_scores, cfg.aggregation);
    if (st.score >= cfg.triple_threshold) trace.selected.insert(support_key(kg.source(id)));
    trace.candidates.push_back(std::move(st));
  }
  return trace;
}

SupportEventSet support_events_kg(const PersonalKg& kg, std::string_view query_text, EmbeddingProvider& provider,
                                  const RetrievalConfig& cfg) {
  return retrieve_support(kg, query_text, provider, cfg).selected;
}

}  // namespace ger
