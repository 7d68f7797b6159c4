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

#include <filesystem>

#include "ger/corpus.hpp"
#include "ger/error.hpp"
#include "ger/nir.hpp"
#include "ger/text.hpp"
#include "test_support.hpp"

namespace ger {
namespace {

using testing::TempDir;

TEST(ConvertNir, EmptyDirectoryListsZeroFiles) {
  TempDir dir;
  try {
    convert_nir(dir.path().string());
    FAIL() << "expected ConversionError";
  } catch (const ConversionError& e) {
    EXPECT_NE(std::string(e.what()).find("0 recognized files"), std::string::npos);
  }
}

TEST(ConvertNir, UnrecognizedLayoutIsSchemaError) {
  TempDir dir;
  write_file(dir.file("x.json"), R"([{"foo": 1}, {"bar": 2}])");
  EXPECT_THROW(convert_nir(dir.path().string()), SchemaError);
}

TEST(ConvertNir, ObjectRecordsWithMissingObjectAreNoted) {
  TempDir src;
  write_file(src.file("part1.jsonl"),
             R"({"id": "n1", "story_a": "I went to the zoo. I slept.", "story_b": "I visited the zoo.",)"
             R"( "triples_a": [{"sub": "I", "pred": "went to", "obj": "the zoo", "sent_id": 0, "label": "UFG"},)"
             R"( {"sub": "I", "pred": "slept", "label": "FGT"}],)"
             R"( "triples_b": [{"sub": "I", "pred": "visited", "obj": "the zoo", "label": "CST"}]})"
             "\n");
  const ConversionResult r = convert_nir(src.path().string());
  ASSERT_EQ(r.corpus.size(), 1u);
  const auto& pair = r.corpus[0];
  EXPECT_EQ(pair.pair_id, "n1");
  ASSERT_EQ(pair.pre.sentences.size(), 2u);
  ASSERT_EQ(pair.pre.triples.size(), 2u);
  EXPECT_FALSE(pair.pre.triples[1].object.has_value());
  EXPECT_EQ(pair.pre.triples[1].sentence_index, 1u);
  EXPECT_EQ(r.report.pair_count, 1u);
  EXPECT_EQ(r.report.triple_count, 3u);
  EXPECT_EQ(r.report.class_counts[index_of(EventType::Unforgotten)], 1u);
  EXPECT_EQ(r.report.class_counts[index_of(EventType::Forgotten)], 1u);
  EXPECT_EQ(r.report.class_counts[index_of(EventType::Consistent)], 1u);
  bool noted = false;
  for (const auto& n : r.report.notes) noted = noted || n.find("object absent") != std::string::npos;
  EXPECT_TRUE(noted);
}

TEST(ConvertNir, BadRecordsAreSkippedWithReasons) {
  TempDir src;
  write_file(src.file("data.json"), R"({"data": [
      {"pair_id": "ok", "pre": {"sentences": ["A b."], "triples": [["I", "ran", null, "Forgotten", 0]]},
       "post": {"sentences": ["C d."], "triples": [["I", "sat", "down", "Additional", 0]]}},
      {"pair_id": "wrong", "pre": {"sentences": ["A b."], "triples": [["I", "ran", null, "Consistent", 0]]},
       "post": {"sentences": ["C d."], "triples": []}}
  ]})");
  const ConversionResult r = convert_nir(src.path().string());
  ASSERT_EQ(r.corpus.size(), 2u);
  EXPECT_EQ(r.corpus[1].pre.triples.size(), 0u);
  ASSERT_EQ(r.report.skipped.size(), 1u);
  EXPECT_NE(r.report.skipped[0].reason.find("not valid"), std::string::npos);
}

TEST(ConvertNir, WritesLoadableCorpus) {
  TempDir src, out;
  write_file(src.file("d.json"), R"([{"pre": "I ran.", "post": "I sat.",
      "pre_triples": [{"subject": "I", "predicate": "ran", "label": "Forgotten"}],
      "post_triples": [{"subject": "I", "predicate": "sat", "label": "Additional"}]}])");
  const ConversionReport report = convert_nir(src.path().string(), out.file("corpus.json"));
  EXPECT_EQ(report.pair_count, 1u);
  const Corpus c = load_corpus(out.file("corpus.json"));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(instances_of(c).size(), 2u);
  EXPECT_EQ(report.to_json().at("pairs"), 1);
}

}  // namespace
}  // namespace ger
