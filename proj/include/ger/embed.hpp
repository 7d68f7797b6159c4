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
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "ger/http_json.hpp"

namespace ger {

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dimension() const { return values.size(); }
  double norm() const;

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

// Scales to unit L2 norm. A zero vector is returned unchanged.
EmbeddingVector normalized(EmbeddingVector v);

// dot(a, b) / (|a| |b|), clamped to [-1, 1]. Throws DimensionMismatch.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// Text-to-vector encoder. embed() normalizes the text, rejects empty input
// and unit-normalizes the result, so implementations only see normalized
// text and may return vectors of any length.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;

  virtual std::string name() const = 0;
  virtual std::string model() const = 0;
  virtual std::size_t dimension() const = 0;

  // Throws EmptyText, ProviderError or DimensionMismatch.
  EmbeddingVector embed(std::string_view text);

 protected:
  virtual EmbeddingVector embed_normalized(const std::string& text) = 0;
};

// Offline provider: each normalized text maps to a pseudo-random unit vector
// seeded by a stable 64-bit hash of the text. Tests can plant explicit
// vectors for chosen texts to build exact similarity scenarios.
class HashEmbedder : public EmbeddingProvider {
 public:
  explicit HashEmbedder(std::size_t dimension);

  std::string name() const override { return "hash"; }
  std::string model() const override { return "hash-" + std::to_string(dimension_); }
  std::size_t dimension() const override { return dimension_; }

  // Overrides the vector for `text` (matched after normalization).
  void plant(std::string_view text, EmbeddingVector v);
  void load_planted(const std::string& json_path);

 protected:
  EmbeddingVector embed_normalized(const std::string& text) override;

 private:
  std::size_t dimension_;
  mutable std::mutex mu_;
  std::map<std::string, EmbeddingVector> planted_;
};

// Throws ConfigError for dimension < 2.
std::unique_ptr<HashEmbedder> deterministic_test_embedder(std::size_t dimension);

struct RemoteEmbeddingOptions {
  std::string endpoint = "https://api.openai.com/v1/embeddings";
  std::string model = "all-MiniLM-L6-v2";
  std::size_t dimension = 384;
  std::string api_key;
  RetryPolicy retry;
  int max_in_flight = 4;
};

// OpenAI-compatible embeddings endpoint: POST {"model", "input"}, reads
// data[0].embedding.
class RemoteEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit RemoteEmbeddingProvider(RemoteEmbeddingOptions options);

  std::string name() const override { return "openai-compatible"; }
  std::string model() const override { return options_.model; }
  std::size_t dimension() const override { return options_.dimension; }
  int requests() const { return client_.attempts(); }

 protected:
  EmbeddingVector embed_normalized(const std::string& text) override;

 private:
  RemoteEmbeddingOptions options_;
  JsonHttpClient client_;
};

// Wraps another provider with an on-disk cache (JSON lines, one vector per
// line) keyed by a hash of (provider name, model, normalized text). Vectors
// are stored at full double precision so cached and fresh results match
// bit for bit.
class CachedEmbeddingProvider : public EmbeddingProvider {
 public:
  // An empty path keeps the cache in memory only.
  CachedEmbeddingProvider(EmbeddingProvider& inner, std::string cache_path);

  std::string name() const override { return inner_.name(); }
  std::string model() const override { return inner_.model(); }
  std::size_t dimension() const override { return inner_.dimension(); }

  std::size_t hits() const;
  std::size_t misses() const;

 protected:
  EmbeddingVector embed_normalized(const std::string& text) override;

 private:
  std::string key_for(const std::string& text) const;

  EmbeddingProvider& inner_;
  std::string path_;
  mutable std::mutex mu_;
  std::map<std::string, EmbeddingVector> entries_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace ger
