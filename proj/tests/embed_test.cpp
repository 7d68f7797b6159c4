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

#include <cmath>
#include <random>

#include "ger/embed.hpp"
#include "ger/error.hpp"
#include "ger/text.hpp"
#include "test_support.hpp"

namespace ger {
namespace {

using testing::TempDir;

TEST(Cosine, HandOracle) {
  EXPECT_NEAR(cosine({{0.6, 0.8}}, {{0.8, 0.6}}), 0.96, 1e-12);
  EXPECT_DOUBLE_EQ(cosine(testing::basis(4, 0), testing::basis(4, 2)), 0.0);
  EXPECT_THROW(cosine({{1.0, 0.0}}, {{1.0, 0.0, 0.0}}), DimensionMismatch);
}

TEST(Cosine, SelfSimilarityAndBounds) {
  auto embedder = deterministic_test_embedder(16);
  std::mt19937 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto a = embedder->embed("text " + std::to_string(rng()));
    const auto b = embedder->embed("other " + std::to_string(rng()));
    EXPECT_NEAR(cosine(a, a), 1.0, 1e-9);
    EXPECT_EQ(cosine(a, b), cosine(b, a));
    EXPECT_GE(cosine(a, b), -1.0 - 1e-9);
    EXPECT_LE(cosine(a, b), 1.0 + 1e-9);
  }
}

TEST(HashEmbedder, DeterministicAndUnitNorm) {
  auto embedder = deterministic_test_embedder(32);
  const auto a = embedder->embed("the zoo");
  const auto b = embedder->embed("the zoo");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.dimension(), 32u);
  EXPECT_NEAR(a.norm(), 1.0, 1e-6);
  EXPECT_NE(embedder->embed("zoo"), embedder->embed("aquarium"));
  // Normalization happens before hashing.
  EXPECT_EQ(embedder->embed("  The   ZOO "), a);
}

TEST(HashEmbedder, SameTextAcrossInstances) {
  EXPECT_EQ(deterministic_test_embedder(8)->embed("seals"), deterministic_test_embedder(8)->embed("seals"));
}

TEST(HashEmbedder, Errors) {
  auto embedder = deterministic_test_embedder(4);
  EXPECT_THROW(embedder->embed(""), EmptyText);
  EXPECT_THROW(embedder->embed(" \t "), EmptyText);
  EXPECT_THROW(deterministic_test_embedder(1), ConfigError);
  EXPECT_THROW(embedder->plant("x", testing::basis(3, 0)), DimensionMismatch);
}

TEST(HashEmbedder, PlantedVectorsOverrideAndNormalize) {
  auto embedder = deterministic_test_embedder(2);
  embedder->plant("The Zoo", {{3.0, 4.0}});
  const auto v = embedder->embed("the zoo");
  EXPECT_NEAR(v.values[0], 0.6, 1e-12);
  EXPECT_NEAR(v.values[1], 0.8, 1e-12);
}

TEST(HashEmbedder, LoadPlantedFile) {
  TempDir dir;
  write_file(dir.file("planted.json"), R"({"zoo": [1, 0, 0], "lion": [0, 2, 0]})");
  auto embedder = deterministic_test_embedder(3);
  embedder->load_planted(dir.file("planted.json"));
  EXPECT_EQ(embedder->embed("lion"), testing::basis(3, 1));
  write_file(dir.file("bad.json"), "[1, 2]");
  EXPECT_THROW(embedder->load_planted(dir.file("bad.json")), ConfigError);
}

TEST(CachedEmbedding, TransparentAndPersistent) {
  TempDir dir;
  HashEmbedder inner(24);
  std::vector<EmbeddingVector> fresh;
  const std::vector<std::string> texts = {"the zoo", "a spider", "my brother", "the zoo"};
  for (const auto& t : texts) fresh.push_back(inner.embed(t));
  {
    CachedEmbeddingProvider cached(inner, dir.file("cache.jsonl"));
    for (std::size_t i = 0; i < texts.size(); ++i) EXPECT_EQ(cached.embed(texts[i]), fresh[i]);
    EXPECT_EQ(cached.misses(), 3u);
    EXPECT_EQ(cached.hits(), 1u);
  }
  CachedEmbeddingProvider reloaded(inner, dir.file("cache.jsonl"));
  for (std::size_t i = 0; i < texts.size(); ++i) EXPECT_EQ(reloaded.embed(texts[i]), fresh[i]);
  EXPECT_EQ(reloaded.misses(), 0u);
  EXPECT_EQ(reloaded.hits(), 4u);
}

TEST(CachedEmbedding, KeyIncludesModel) {
  TempDir dir;
  HashEmbedder small(8), large(16);
  {
    CachedEmbeddingProvider a(small, dir.file("c.jsonl"));
    a.embed("zoo");
  }
  CachedEmbeddingProvider b(large, dir.file("c.jsonl"));
  EXPECT_EQ(b.embed("zoo").dimension(), 16u);
  EXPECT_EQ(b.misses(), 1u);
}

}  // namespace
}  // namespace ger
