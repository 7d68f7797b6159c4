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
#include <set>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "ger/corpus.hpp"
#include "ger/embed.hpp"
#include "ger/graph.hpp"

namespace ger {

enum class Aggregation { Mean, Min, GeometricMeanNonNeg };

std::string_view to_string(Aggregation a);
// "mean", "min", "geo" (and the full names).
std::optional<Aggregation> parse_aggregation(std::string_view text);

struct RetrievalConfig {
  double node_threshold = 0.5;
  double triple_threshold = 0.5;
  Aggregation aggregation = Aggregation::Mean;

  // Throws ConfigError when a threshold is outside [-1, 1].
  void validate() const;
};

struct ScoredNode {
  std::string node_id;
  double score = 0.0;
};

struct ScoredTriple {
  std::string triple_id;
  double score = 0.0;
  // Subject, predicate and (when present) object scores, in that order.
  std::vector<double> node_scores;
};

// Canonical identity of a reference-story event: normalized slots plus the
// triple id it came from.
struct SupportKey {
  std::string triple_id;
  std::string subject;
  std::string predicate;
  std::string object;

  friend bool operator==(const SupportKey&, const SupportKey&) = default;
  friend auto operator<=>(const SupportKey&, const SupportKey&) = default;
};

SupportKey support_key(const EventTriple& t);

using SupportEventSet = std::set<SupportKey>;

SupportEventSet intersect(const SupportEventSet& a, const SupportEventSet& b);
std::vector<std::string> triple_ids(const SupportEventSet& s);

// One score per KG node: the best cosine between the query and any of the
// node's surface forms. Ordered by node id.
std::vector<ScoredNode> score_nodes(const PersonalKg& kg, std::string_view query_text, EmbeddingProvider& provider);

// Nodes scoring at least `threshold`, order preserved.
std::vector<ScoredNode> key_nodes(std::span<const ScoredNode> scored, double threshold);

// Ids of triples that contain at least one key node, deduplicated, sorted.
std::vector<std::string> candidate_triples(const PersonalKg& kg, std::span<const ScoredNode> key);

// Combines node scores of one triple. Expects two (no object) or three
// scores.
double triple_score(std::span<const double> node_scores, Aggregation aggregation);

// Full breakdown of one retrieval, kept for inspection and the CLI.
struct RetrievalTrace {
  std::vector<ScoredNode> nodes;
  std::vector<ScoredNode> key;
  std::vector<ScoredTriple> candidates;
  SupportEventSet selected;

  nlohmann::json to_json(const PersonalKg& kg) const;
};

RetrievalTrace retrieve_support(const PersonalKg& kg, std::string_view query_text, EmbeddingProvider& provider,
                                const RetrievalConfig& cfg);

// score_nodes -> key_nodes -> candidate_triples -> triple_score -> filter.
SupportEventSet support_events_kg(const PersonalKg& kg, std::string_view query_text, EmbeddingProvider& provider,
                                  const RetrievalConfig& cfg);

}  // namespace ger
