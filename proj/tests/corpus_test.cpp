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

#include <random>

#include "ger/corpus.hpp"
#include "ger/error.hpp"
#include "ger/text.hpp"
#include "json.hpp"
#include "test_support.hpp"

namespace ger {
namespace {

using nlohmann::json;
using testing::TempDir;
using testing::triple;

json one_pair_doc() {
  return json::parse(R"({
    "schema_version": 1,
    "pairs": [{
      "pair_id": "p1",
      "pre": {"story_id": "a", "sentences": ["I went to the zoo.", "I saw a lion.", "I slept."],
              "triples": [
                {"triple_id": "t1", "subject": "I", "predicate": "went to", "object": "the zoo",
                 "sentence_index": 0, "gold_label": "Unforgotten"},
                {"triple_id": "t2", "subject": "I", "predicate": "saw", "object": "a lion",
                 "sentence_index": 1, "gold_label": "Forgotten"}]},
      "post": {"story_id": "b", "sentences": ["We visited the zoo."],
               "triples": [
                {"triple_id": "t1", "subject": "we", "predicate": "visited", "object": "the zoo",
                 "sentence_index": 0, "gold_label": "Consistent"}]}
    }]
  })");
}

TEST(LoadCorpus, FixtureCountsEchoFile) {
  const Corpus c = corpus_from_json(one_pair_doc());
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].pre.triples.size(), 2u);
  EXPECT_EQ(c[0].post.triples.size(), 1u);
  EXPECT_EQ(c[0].pre.role, StoryRole::PreRetold);
  EXPECT_EQ(c[0].post.role, StoryRole::PostRetold);
}

TEST(LoadCorpus, SentenceIndexOutOfRangeNamesTriple) {
  json doc = one_pair_doc();
  doc["pairs"][0]["pre"]["triples"][1]["sentence_index"] = 7;
  try {
    corpus_from_json(doc);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.pair_id(), "p1");
    EXPECT_NE(std::string(e.what()).find("t2"), std::string::npos) << e.what();
    EXPECT_NE(e.field().find("sentence_index"), std::string::npos);
  }
}

TEST(LoadCorpus, MalformedDocumentsAreSchemaErrors) {
  TempDir dir;
  write_file(dir.file("bad.json"), "{ not json");
  EXPECT_THROW(load_corpus(dir.file("bad.json")), SchemaError);
  json doc = one_pair_doc();
  doc["pairs"][0]["pre"].erase("sentences");
  EXPECT_THROW(corpus_from_json(doc), SchemaError);
  doc = one_pair_doc();
  doc["pairs"][0]["post"]["triples"][0].erase("predicate");
  EXPECT_THROW(corpus_from_json(doc), SchemaError);
}

TEST(LoadCorpus, RejectsInvariantViolations) {
  json doc = one_pair_doc();
  doc["pairs"][0]["pre"]["triples"][1]["triple_id"] = "t1";
  EXPECT_THROW(corpus_from_json(doc), ValidationError);

  doc = one_pair_doc();
  doc["pairs"][0]["pre"]["triples"][0]["subject"] = "   ";
  EXPECT_THROW(corpus_from_json(doc), ValidationError);

  // A post-story event cannot be Forgotten.
  doc = one_pair_doc();
  doc["pairs"][0]["post"]["triples"][0]["gold_label"] = "Forgotten";
  EXPECT_THROW(corpus_from_json(doc), ValidationError);

  doc = one_pair_doc();
  doc["pairs"].push_back(doc["pairs"][0]);
  EXPECT_THROW(corpus_from_json(doc), ValidationError);
}

TEST(LoadCorpus, RoundTripIsFieldEqual) {
  TempDir dir;
  const Corpus original = load_corpus(testing::data_path("fixture_corpus.json"));
  write_corpus(original, dir.file("copy.json"));
  const Corpus again = load_corpus(dir.file("copy.json"));
  ASSERT_EQ(again.size(), original.size());
  EXPECT_EQ(corpus_to_json(again), corpus_to_json(original));
  for (std::size_t i = 0; i < original.size(); ++i) {
    EXPECT_EQ(again[i].pair_id, original[i].pair_id);
    EXPECT_EQ(again[i].pre.sentences, original[i].pre.sentences);
    ASSERT_EQ(again[i].post.triples.size(), original[i].post.triples.size());
    for (std::size_t k = 0; k < original[i].post.triples.size(); ++k) {
      const auto& a = again[i].post.triples[k];
      const auto& b = original[i].post.triples[k];
      EXPECT_EQ(a.triple_id, b.triple_id);
      EXPECT_EQ(a.subject, b.subject);
      EXPECT_EQ(a.object, b.object);
      EXPECT_EQ(a.gold_label, b.gold_label);
    }
  }
}

TEST(Instances, OnePerTripleWithMatchingDirections) {
  const Corpus c = load_corpus(testing::data_path("fixture_corpus.json"));
  std::size_t triples = 0;
  for (const auto& pair : c) {
    const auto inst = instances_of(pair);
    ASSERT_EQ(inst.size(), pair.pre.triples.size() + pair.post.triples.size());
    triples += inst.size();
    std::set<InstanceKey> keys;
    for (const auto& i : inst) {
      EXPECT_TRUE(keys.insert(i.key()).second) << "duplicate " << i.key().to_string();
      EXPECT_EQ(i.reference->role, reference_role(i.direction));
      ASSERT_TRUE(i.gold_label.has_value());
      EXPECT_TRUE(admissible(*i.gold_label, i.direction));
    }
  }
  EXPECT_EQ(instances_of(c).size(), triples);
  EXPECT_EQ(triples, 30u);
}

TEST(Instances, CountsAndOrder) {
  StoryPair pair;
  pair.pair_id = "p";
  pair.pre.role = StoryRole::PreRetold;
  pair.post.role = StoryRole::PostRetold;
  pair.pre.sentences = {"x"};
  pair.post.sentences = {"y"};
  pair.pre.triples = {triple("a", "I", "ran", std::nullopt), triple("b", "I", "sat", std::nullopt)};
  pair.post.triples = {triple("c", "I", "ate", "rice"), triple("d", "I", "slept", std::nullopt),
                       triple("e", "I", "woke", std::nullopt)};
  auto inst = instances_of(pair);
  ASSERT_EQ(inst.size(), 5u);
  EXPECT_EQ(std::count_if(inst.begin(), inst.end(),
                          [](const auto& i) { return i.direction == Direction::TargetIsPre; }),
            2);
  pair.post.triples.clear();
  inst = instances_of(pair);
  ASSERT_EQ(inst.size(), 2u);
  for (const auto& i : inst) EXPECT_EQ(i.direction, Direction::TargetIsPre);
}

TEST(Instances, ZooQueryUsesPostStoryAsReference) {
  const Corpus c = load_corpus(testing::data_path("fixture_corpus.json"));
  const auto inst = instances_of(c[0]);
  const auto it = std::find_if(inst.begin(), inst.end(), [](const QueryInstance& i) {
    return i.direction == Direction::TargetIsPre && i.query.triple_id == "t1";
  });
  ASSERT_NE(it, inst.end());
  EXPECT_EQ(it->query.subject, "me and my girlfriend");
  EXPECT_EQ(it->reference, &c[0].post);
  EXPECT_EQ(it->query_text, "Me and my girlfriend went to the zoo.");
}

TEST(RenderQuery, Examples) {
  EXPECT_EQ(render_query_sentence(triple("t", "I", "go to", "my sitting room")), "I go to my sitting room.");
  EXPECT_EQ(render_query_sentence(triple("t", "me and my girlfriend", "went to", "the zoo")),
            "Me and my girlfriend went to the zoo.");
  EXPECT_EQ(render_query_sentence(triple("t", "I", "slept", std::nullopt)), "I slept.");
}

TEST(RenderQuery, CollapsesWhitespaceDeterministically) {
  std::mt19937 rng(7);
  const std::vector<std::string> pads = {" ", "  ", "\t", " \n "};
  for (int trial = 0; trial < 50; ++trial) {
    auto pad = [&] { return pads[rng() % pads.size()]; };
    const EventTriple noisy =
        triple("t", pad() + "my" + pad() + "brother" + pad(), pad() + "caught" + pad(), pad() + "a" + pad() + "spider");
    EXPECT_EQ(render_query_sentence(noisy), "My brother caught a spider.");
    EXPECT_EQ(render_query_sentence(noisy), render_query_sentence(noisy));
  }
}

TEST(GoldCounts, FixtureCoversEveryClass) {
  const auto counts = gold_class_counts(load_corpus(testing::data_path("fixture_corpus.json")));
  const std::array<std::size_t, 5> expected{6, 2, 6, 6, 10};
  EXPECT_EQ(counts, expected);
}

}  // namespace
}  // namespace ger
