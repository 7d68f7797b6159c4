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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ger/corpus.hpp"

namespace ger {

enum class NodeRole { Subject, Predicate, Object };

std::string_view to_string(NodeRole r);

struct KgNode {
  std::string node_id;
  // Whitespace-collapsed display forms, sorted and unique. Never empty.
  std::vector<std::string> surface_forms;
  NodeRole role = NodeRole::Subject;
  // Nodes linked by coreference share a cluster id; an unlinked node is its
  // own cluster.
  std::string cluster_id;
};

struct KgTriple {
  std::string triple_id;
  std::string subject_node;
  std::string predicate_node;
  std::optional<std::string> object_node;
  std::size_t sentence_index = 0;
};

// Personal knowledge graph of one story: subject, predicate and object
// nodes connected by the story's events. Immutable once built.
class PersonalKg {
 public:
  const std::vector<KgNode>& nodes() const { return nodes_; }
  const std::vector<KgTriple>& triples() const { return triples_; }

  bool contains(const std::string& node_id) const { return index_.contains(node_id); }
  const KgNode& node(const std::string& node_id) const;

  // The story triple a KG triple was built from.
  const EventTriple& source(const std::string& triple_id) const;
  const KgTriple& triple(const std::string& triple_id) const;

  const std::string& story_id() const { return story_id_; }

  nlohmann::json to_json() const;

 private:
  friend PersonalKg build_kg(const Story&, const std::optional<CorefMap>&);

  std::string story_id_;
  std::vector<KgNode> nodes_;
  std::map<std::string, std::size_t> index_;
  std::vector<KgTriple> triples_;
  std::map<std::string, EventTriple> sources_;
};

// Nodes are keyed by (role, normalized surface). Coreference clusters merge
// subject/object nodes: within one role into a single node, across roles
// into a shared cluster id. Predicates only merge on exact match. Throws
// CorefError for a mention outside the story's sentences.
PersonalKg build_kg(const Story& story, const std::optional<CorefMap>& coref);
inline PersonalKg build_kg(const Story& story) { return build_kg(story, story.coref); }

// Triples that reference the node or any node in its cluster, sorted by
// triple id. Throws UnknownNode.
std::vector<KgTriple> triples_containing(const PersonalKg& kg, const std::string& node_id);

}  // namespace ger
