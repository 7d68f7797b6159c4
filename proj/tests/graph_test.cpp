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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ger/error.hpp"
#include "ger/graph.hpp"
#include "ger/text.hpp"
#include "test_support.hpp"

namespace ger {
namespace {

using testing::triple;

Story story_of(std::vector<EventTriple> triples, std::size_t sentences = 4) {
  Story s;
  s.story_id = "s";
  s.role = StoryRole::PostRetold;
  for (std::size_t i = 0; i < sentences; ++i) s.sentences.push_back("Sentence " + std::to_string(i) + ".");
  s.triples = std::move(triples);
  return s;
}

const KgNode& node_with_form(const PersonalKg& kg, NodeRole role, const std::string& form) {
  for (const auto& n : kg.nodes()) {
    if (n.role == role && std::find(n.surface_forms.begin(), n.surface_forms.end(), form) != n.surface_forms.end()) {
      return n;
    }
  }
  throw std::runtime_error("no node for " + form);
}

std::vector<std::string> ids_of(const std::vector<KgTriple>& ts) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(t.triple_id);
  return out;
}

TEST(BuildKg, SingleTripleHasThreeNodes) {
  const PersonalKg kg = build_kg(story_of({triple("t1", "me and my girlfriend", "went to", "the zoo")}));
  EXPECT_EQ(kg.nodes().size(), 3u);
  ASSERT_EQ(kg.triples().size(), 1u);
  const auto& t = kg.triples()[0];
  EXPECT_EQ(kg.node(t.subject_node).surface_forms, std::vector<std::string>{"me and my girlfriend"});
  EXPECT_EQ(kg.node(t.predicate_node).role, NodeRole::Predicate);
  ASSERT_TRUE(t.object_node.has_value());
  EXPECT_EQ(kg.node(*t.object_node).surface_forms, std::vector<std::string>{"the zoo"});
}

TEST(BuildKg, SharedSubjectMergesToFiveNodes) {
  const PersonalKg kg =
      build_kg(story_of({triple("t1", "I", "went to", "the zoo"), triple("t2", "I", "bought", "a hat")}));
  EXPECT_EQ(kg.nodes().size(), 5u);
  EXPECT_EQ(kg.triples().size(), 2u);
  EXPECT_EQ(kg.triples()[0].subject_node, kg.triples()[1].subject_node);
}

TEST(BuildKg, AbsentObjectGivesTwoNodeEvent) {
  const PersonalKg kg = build_kg(story_of({triple("t1", "I", "slept", std::nullopt)}));
  EXPECT_EQ(kg.nodes().size(), 2u);
  EXPECT_FALSE(kg.triples()[0].object_node.has_value());
}

TEST(BuildKg, CorefMergesSameRoleMentions) {
  Story s = story_of({triple("t1", "my girlfriend", "went to", "the zoo", 0),
                      triple("t2", "she", "bought", "a hat", 1)});
  CorefMap coref{{{{0, "my girlfriend"}, {1, "she"}}}};
  const PersonalKg kg = build_kg(s, coref);
  EXPECT_EQ(kg.triples().size(), 2u);
  const auto& n = node_with_form(kg, NodeRole::Subject, "she");
  EXPECT_EQ(n.surface_forms, (std::vector<std::string>{"my girlfriend", "she"}));
  EXPECT_EQ(kg.triples()[0].subject_node, kg.triples()[1].subject_node);
  EXPECT_EQ(kg.nodes().size(), 5u);
}

TEST(BuildKg, CorefAcrossRolesSharesClusterOnly) {
  Story s = story_of({triple("t1", "I", "met", "my girlfriend", 0), triple("t2", "she", "laughed", std::nullopt, 1)});
  CorefMap coref{{{{0, "my girlfriend"}, {1, "she"}}}};
  const PersonalKg kg = build_kg(s, coref);
  const auto& obj = node_with_form(kg, NodeRole::Object, "my girlfriend");
  const auto& subj = node_with_form(kg, NodeRole::Subject, "she");
  EXPECT_NE(obj.node_id, subj.node_id);
  EXPECT_EQ(obj.cluster_id, subj.cluster_id);
  EXPECT_EQ(ids_of(triples_containing(kg, obj.node_id)), (std::vector<std::string>{"t1", "t2"}));
}

TEST(BuildKg, PredicatesAreNeverCorefMerged) {
  Story s = story_of({triple("t1", "I", "ran", std::nullopt, 0), triple("t2", "I", "jogged", std::nullopt, 1)});
  CorefMap coref{{{{0, "ran"}, {1, "jogged"}}}};
  const PersonalKg kg = build_kg(s, coref);
  EXPECT_NE(kg.triples()[0].predicate_node, kg.triples()[1].predicate_node);
  EXPECT_NE(kg.node(kg.triples()[0].predicate_node).cluster_id, kg.node(kg.triples()[1].predicate_node).cluster_id);
}

TEST(BuildKg, CorefMentionOutsideStoryThrows) {
  Story s = story_of({triple("t1", "I", "ran", std::nullopt)}, 2);
  CorefMap coref{{{{0, "I"}, {5, "me"}}}};
  EXPECT_THROW(build_kg(s, coref), CorefError);
}

TEST(TriplesContaining, Lookups) {
  const PersonalKg kg =
      build_kg(story_of({triple("t2", "I", "bought", "a hat"), triple("t1", "I", "went to", "the zoo")}));
  const auto& hat = node_with_form(kg, NodeRole::Object, "a hat");
  EXPECT_EQ(ids_of(triples_containing(kg, hat.node_id)), std::vector<std::string>{"t2"});
  const auto& me = node_with_form(kg, NodeRole::Subject, "I");
  EXPECT_EQ(ids_of(triples_containing(kg, me.node_id)), (std::vector<std::string>{"t1", "t2"}));
  EXPECT_THROW(triples_containing(kg, "n999"), UnknownNode);
}

// Random stories over a small vocabulary so that merges happen often.
Story random_story(std::mt19937& rng, std::size_t n_triples, bool with_coref) {
  const std::vector<std::string> subjects = {"I", "my brother", "She", "we", "  my  Brother", "the dog"};
  const std::vector<std::string> predicates = {"went to", "saw", "Saw", "caught", "ate"};
  const std::vector<std::string> objects = {"the zoo", "a spider", "the dog", "her", "the Zoo"};
  std::vector<EventTriple> ts;
  for (std::size_t i = 0; i < n_triples; ++i) {
    std::optional<std::string> obj;
    if (rng() % 4 != 0) obj = objects[rng() % objects.size()];
    ts.push_back(triple("t" + std::to_string(i), subjects[rng() % subjects.size()],
                        predicates[rng() % predicates.size()], obj, rng() % 4));
  }
  Story s = story_of(std::move(ts));
  if (with_coref) s.coref = CorefMap{{{{0, "she"}, {1, "her"}}, {{2, "the dog"}, {3, "we"}}}};
  return s;
}

// Node-id-free description of a KG: per triple the surface forms of its
// nodes, and the partition of surface-form sets into clusters.
struct CanonicalKg {
  std::map<std::string, std::vector<std::vector<std::string>>> triples;
  std::set<std::set<std::vector<std::string>>> clusters;
  bool operator==(const CanonicalKg&) const = default;
};

CanonicalKg canonical(const PersonalKg& kg) {
  CanonicalKg c;
  for (const auto& t : kg.triples()) {
    auto& forms = c.triples[t.triple_id];
    forms.push_back(kg.node(t.subject_node).surface_forms);
    forms.push_back(kg.node(t.predicate_node).surface_forms);
    if (t.object_node) forms.push_back(kg.node(*t.object_node).surface_forms);
  }
  std::map<std::string, std::set<std::vector<std::string>>> by_cluster;
  for (const auto& n : kg.nodes()) by_cluster[n.cluster_id].insert(n.surface_forms);
  for (auto& [_, members] : by_cluster) c.clusters.insert(members);
  return c;
}

TEST(BuildKgProperty, PermutationInvariant) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    Story s = random_story(rng, 1 + rng() % 8, trial % 2 == 0);
    const CanonicalKg expected = canonical(build_kg(s));
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      std::shuffle(s.triples.begin(), s.triples.end(), rng);
      EXPECT_EQ(canonical(build_kg(s)), expected) << "trial " << trial;
    }
  }
}

TEST(BuildKgProperty, StructuralInvariants) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Story s = random_story(rng, 1 + rng() % 8, trial % 3 == 0);
    const PersonalKg kg = build_kg(s);
    ASSERT_EQ(kg.triples().size(), s.triples.size());
    std::set<std::string> used;
    for (const auto& t : kg.triples()) {
      EXPECT_EQ(kg.node(t.subject_node).role, NodeRole::Subject);
      EXPECT_EQ(kg.node(t.predicate_node).role, NodeRole::Predicate);
      used.insert(t.subject_node);
      used.insert(t.predicate_node);
      if (t.object_node) {
        EXPECT_EQ(kg.node(*t.object_node).role, NodeRole::Object);
        used.insert(*t.object_node);
      }
    }
    std::map<std::string, std::set<NodeRole>> cluster_roles;
    for (const auto& n : kg.nodes()) {
      EXPECT_FALSE(n.surface_forms.empty());
      EXPECT_TRUE(used.contains(n.node_id)) << "unreachable node " << n.node_id;
      for (const auto& f : n.surface_forms) EXPECT_EQ(f, collapse_whitespace(f));
      cluster_roles[n.cluster_id].insert(n.role);
    }
    for (const auto& [cluster, roles] : cluster_roles) {
      if (roles.size() > 1) { EXPECT_FALSE(roles.contains(NodeRole::Predicate)) << cluster; }
    }
  }
}

TEST(BuildKgProperty, WithoutCorefMergeIffSameNormalizedSurfaceAndRole) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Story s = random_story(rng, 1 + rng() % 8, false);
    const PersonalKg kg = build_kg(s);
    std::set<std::pair<NodeRole, std::string>> distinct;
    for (const auto& t : s.triples) {
      distinct.insert({NodeRole::Subject, normalize_text(t.subject)});
      distinct.insert({NodeRole::Predicate, normalize_text(t.predicate)});
      if (t.object) distinct.insert({NodeRole::Object, normalize_text(*t.object)});
    }
    EXPECT_EQ(kg.nodes().size(), distinct.size());
    for (const auto& n : kg.nodes()) {
      std::set<std::string> norms;
      for (const auto& f : n.surface_forms) norms.insert(normalize_text(f));
      EXPECT_EQ(norms.size(), 1u);
    }
  }
}

}  // namespace
}  // namespace ger
