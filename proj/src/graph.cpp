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

#include "ger/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "ger/error.hpp"
#include "ger/text.hpp"

namespace ger {

using nlohmann::json;

std::string_view to_string(NodeRole r) {
  switch (r) {
    case NodeRole::Subject: return "Subject";
    case NodeRole::Predicate: return "Predicate";
    case NodeRole::Object: return "Object";
  }
  return "?";
}

const KgNode& PersonalKg::node(const std::string& node_id) const {
  auto it = index_.find(node_id);
  if (it == index_.end()) throw UnknownNode(node_id);
  return nodes_[it->second];
}

const EventTriple& PersonalKg::source(const std::string& triple_id) const {
  auto it = sources_.find(triple_id);
  if (it == sources_.end()) throw Error("unknown triple id '" + triple_id + "'");
  return it->second;
}

const KgTriple& PersonalKg::triple(const std::string& triple_id) const {
  for (const auto& t : triples_) {
    if (t.triple_id == triple_id) return t;
  }
  throw Error("unknown triple id '" + triple_id + "'");
}

json PersonalKg::to_json() const {
  json nodes = json::array();
  std::map<std::string, std::vector<std::string>> clusters;
  for (const auto& n : nodes_) {
    nodes.push_back({{"node_id", n.node_id},
                     {"role", to_string(n.role)},
                     {"surface_forms", n.surface_forms},
                     {"cluster_id", n.cluster_id}});
    clusters[n.cluster_id].push_back(n.node_id);
  }
  json jclusters = json::array();
  for (const auto& [id, members] : clusters) jclusters.push_back({{"cluster_id", id}, {"nodes", members}});
  json triples = json::array();
  for (const auto& t : triples_) {
    triples.push_back({{"triple_id", t.triple_id},
                       {"subject", t.subject_node},
                       {"predicate", t.predicate_node},
                       {"object", t.object_node ? json(*t.object_node) : json(nullptr)},
                       {"sentence_index", t.sentence_index}});
  }
  return {{"story_id", story_id_}, {"nodes", nodes}, {"clusters", jclusters}, {"triples", triples}};
}

namespace {

using NodeKey = std::pair<NodeRole, std::string>;

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller root wins so the result does not depend on union order.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

PersonalKg build_kg(const Story& story, const std::optional<CorefMap>& coref) {
  // Distinct keys in sorted order; their positions index the disjoint sets.
  std::map<NodeKey, std::set<std::string>> forms;
  auto add = [&](NodeRole role, const std::string& surface) {
    forms[{role, normalize_text(surface)}].insert(collapse_whitespace(surface));
  };
  for (const auto& t : story.triples) {
    add(NodeRole::Subject, t.subject);
    add(NodeRole::Predicate, t.predicate);
    if (t.object) add(NodeRole::Object, *t.object);
  }
  std::vector<NodeKey> keys;
  std::map<NodeKey, std::size_t> key_index;
  for (const auto& [key, _] : forms) {
    key_index[key] = keys.size();
    keys.push_back(key);
  }

  DisjointSets merged(keys.size());
  DisjointSets clustered(keys.size());
  if (coref) {
    for (const auto& cluster : coref->clusters) {
      std::vector<std::size_t> members;
      for (const auto& m : cluster) {
        if (m.sentence_index >= story.sentences.size()) {
          throw CorefError("story '" + story.story_id + "': coref mention '" + m.text + "' references sentence " +
                           std::to_string(m.sentence_index) + " of " + std::to_string(story.sentences.size()));
        }
        const std::string norm = normalize_text(m.text);
        for (NodeRole role : {NodeRole::Subject, NodeRole::Object}) {
          if (auto it = key_index.find({role, norm}); it != key_index.end()) members.push_back(it->second);
        }
      }
      for (std::size_t i = 1; i < members.size(); ++i) {
        clustered.unite(members[0], members[i]);
        for (std::size_t j = 0; j < i; ++j) {
          if (keys[members[i]].first == keys[members[j]].first) merged.unite(members[i], members[j]);
        }
      }
    }
  }

  // Roots are the smallest key index of each group and keys are sorted by
  // (role, normalized surface), so numbering roots in key order gives ids
  // that do not depend on triple order.
  std::map<std::size_t, std::size_t> node_of_root;
  std::map<std::size_t, std::size_t> cluster_of_root;
  PersonalKg kg;
  kg.story_id_ = story.story_id;
  std::vector<std::string> node_id_of_key(keys.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const std::size_t root = merged.find(k);
    auto [it, fresh] = node_of_root.try_emplace(root, kg.nodes_.size());
    if (fresh) {
      KgNode n;
      n.node_id = "n" + std::to_string(kg.nodes_.size());
      n.role = keys[k].first;
      const std::size_t croot = clustered.find(k);
      auto [cit, _] = cluster_of_root.try_emplace(croot, cluster_of_root.size());
      n.cluster_id = "c" + std::to_string(cit->second);
      kg.nodes_.push_back(std::move(n));
    }
    KgNode& n = kg.nodes_[it->second];
    const auto& f = forms[keys[k]];
    n.surface_forms.insert(n.surface_forms.end(), f.begin(), f.end());
    node_id_of_key[k] = n.node_id;
  }
  for (std::size_t i = 0; i < kg.nodes_.size(); ++i) {
    auto& sf = kg.nodes_[i].surface_forms;
    std::sort(sf.begin(), sf.end());
    sf.erase(std::unique(sf.begin(), sf.end()), sf.end());
    kg.index_[kg.nodes_[i].node_id] = i;
  }

  auto id_of = [&](NodeRole role, const std::string& surface) {
    return node_id_of_key[key_index.at({role, normalize_text(surface)})];
  };
  for (const auto& t : story.triples) {
    KgTriple kt;
    kt.triple_id = t.triple_id;
    kt.subject_node = id_of(NodeRole::Subject, t.subject);
    kt.predicate_node = id_of(NodeRole::Predicate, t.predicate);
    if (t.object) kt.object_node = id_of(NodeRole::Object, *t.object);
    kt.sentence_index = t.sentence_index;
    kg.triples_.push_back(std::move(kt));
    kg.sources_[t.triple_id] = t;
  }
  return kg;
}

std::vector<KgTriple> triples_containing(const PersonalKg& kg, const std::string& node_id) {
  const std::string& cluster = kg.node(node_id).cluster_id;
  std::set<std::string> members;
  for (const auto& n : kg.nodes()) {
    if (n.cluster_id == cluster) members.insert(n.node_id);
  }
  std::vector<KgTriple> out;
  for (const auto& t : kg.triples()) {
    if (members.contains(t.subject_node) || members.contains(t.predicate_node) ||
        (t.object_node && members.contains(*t.object_node))) {
      out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end(), [](const KgTriple& a, const KgTriple& b) { return a.triple_id < b.triple_id; });
  return out;
}

}  // namespace ger
