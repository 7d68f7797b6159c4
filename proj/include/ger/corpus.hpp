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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ger/types.hpp"

namespace ger {

inline constexpr int kCorpusSchemaVersion = 1;

struct EventTriple {
  std::string triple_id;
  std::string subject;
  std::string predicate;
  std::optional<std::string> object;
  std::size_t sentence_index = 0;
  std::optional<EventType> gold_label;

  friend bool operator==(const EventTriple&, const EventTriple&) = default;
};

struct CorefMention {
  std::size_t sentence_index = 0;
  std::string text;

  friend bool operator==(const CorefMention&, const CorefMention&) = default;
};

// Mention clusters; each inner vector is one entity.
struct CorefMap {
  std::vector<std::vector<CorefMention>> clusters;

  friend bool operator==(const CorefMap&, const CorefMap&) = default;
};

struct Story {
  std::string story_id;
  StoryRole role = StoryRole::PreRetold;
  std::vector<std::string> sentences;
  std::vector<EventTriple> triples;
  std::optional<CorefMap> coref;

  const EventTriple* find_triple(const std::string& triple_id) const;

  friend bool operator==(const Story&, const Story&) = default;
};

struct StoryPair {
  std::string pair_id;
  Story pre;
  Story post;

  const Story& target(Direction d) const { return d == Direction::TargetIsPre ? pre : post; }
  const Story& reference(Direction d) const { return d == Direction::TargetIsPre ? post : pre; }

  friend bool operator==(const StoryPair&, const StoryPair&) = default;
};

using Corpus = std::vector<StoryPair>;

// Identifies one classification instance across files: the pair, the story
// the query triple is taken from, and the triple id within that story.
struct InstanceKey {
  std::string pair_id;
  Direction direction = Direction::TargetIsPre;
  std::string triple_id;

  // "pair/pre/triple"
  std::string to_string() const;

  friend bool operator==(const InstanceKey&, const InstanceKey&) = default;
  friend auto operator<=>(const InstanceKey&, const InstanceKey&) = default;
};

// One query triple classified against the other story of its pair. The
// reference pointer borrows from the StoryPair passed to instances_of.
struct QueryInstance {
  std::string pair_id;
  EventTriple query;
  std::string query_text;
  const Story* reference = nullptr;
  Direction direction = Direction::TargetIsPre;
  std::optional<EventType> gold_label;

  InstanceKey key() const { return {pair_id, direction, query.triple_id}; }
};

// Throws SchemaError for structural problems and ValidationError for
// invariant violations.
Corpus load_corpus(const std::string& path);
Corpus corpus_from_json(const nlohmann::json& doc);
nlohmann::json corpus_to_json(const Corpus& corpus);
void write_corpus(const Corpus& corpus, const std::string& path);

void validate_pair(const StoryPair& pair);

std::vector<QueryInstance> instances_of(const StoryPair& pair);
std::vector<QueryInstance> instances_of(const Corpus& corpus);

// "(I, go to, my sitting room)" -> "I go to my sitting room."
std::string render_query_sentence(const EventTriple& triple);

// Per-class gold counts over every triple in the corpus, indexed by EventType.
std::array<std::size_t, 5> gold_class_counts(const Corpus& corpus);

}  // namespace ger
