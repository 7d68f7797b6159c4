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

#include "ger/embed.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "ger/error.hpp"
#include "ger/text.hpp"

namespace ger {

using nlohmann::json;

double EmbeddingVector::norm() const {
  double sum = 0.0;
  for (double x : values) sum += x * x;
  return std::sqrt(sum);
}

EmbeddingVector normalized(EmbeddingVector v) {
  const double n = v.norm();
  if (n > 0.0) {
    for (double& x : v.values) x /= n;
  }
  return v;
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension()) throw DimensionMismatch(a.dimension(), b.dimension());
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

EmbeddingVector EmbeddingProvider::embed(std::string_view text) {
  const std::string norm = normalize_text(text);
  if (norm.empty()) throw EmptyText();
  EmbeddingVector v = embed_normalized(norm);
  if (v.dimension() != dimension()) throw DimensionMismatch(dimension(), v.dimension());
  return normalized(std::move(v));
}

HashEmbedder::HashEmbedder(std::size_t dimension) : dimension_(dimension) {
  if (dimension < 2) throw ConfigError("hash embedder dimension must be at least 2");
}

void HashEmbedder::plant(std::string_view text, EmbeddingVector v) {
  if (v.dimension() != dimension_) throw DimensionMismatch(dimension_, v.dimension());
  std::lock_guard lock(mu_);
  planted_[normalize_text(text)] = normalized(std::move(v));
}

void HashEmbedder::load_planted(const std::string& json_path) {
  json doc;
  try {
    doc = json::parse(read_file(json_path));
  } catch (const json::parse_error& e) {
    throw ConfigError("planted vectors '" + json_path + "': " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("planted vectors '" + json_path + "' must map text to arrays");
  for (const auto& [text, values] : doc.items()) {
    plant(text, EmbeddingVector{values.get<std::vector<double>>()});
  }
}

EmbeddingVector HashEmbedder::embed_normalized(const std::string& text) {
  {
    std::lock_guard lock(mu_);
    if (auto it = planted_.find(text); it != planted_.end()) return it->second;
  }
  // mt19937_64 output is fixed by the standard; the mapping to [-1, 1) is
  // done by hand so the vectors do not depend on the library's
  // distributions.
  std::mt19937_64 rng(stable_hash64(text));
  EmbeddingVector v;
  v.values.resize(dimension_);
  for (double& x : v.values) x = static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
  return v;
}

std::unique_ptr<HashEmbedder> deterministic_test_embedder(std::size_t dimension) {
  return std::make_unique<HashEmbedder>(dimension);
}

RemoteEmbeddingProvider::RemoteEmbeddingProvider(RemoteEmbeddingOptions options)
    : options_(std::move(options)),
      client_(options_.endpoint, options_.api_key, options_.retry, options_.max_in_flight) {}

EmbeddingVector RemoteEmbeddingProvider::embed_normalized(const std::string& text) {
  json response = client_.post({{"model", options_.model}, {"input", text}});
  try {
    return EmbeddingVector{response.at("data").at(0).at("embedding").get<std::vector<double>>()};
  } catch (const json::exception& e) {
    throw ProviderError("embeddings response lacks data[0].embedding: " + std::string(e.what()));
  }
}

CachedEmbeddingProvider::CachedEmbeddingProvider(EmbeddingProvider& inner, std::string cache_path)
    : inner_(inner), path_(std::move(cache_path)) {
  if (path_.empty()) return;
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      entries_[j.at("key").get<std::string>()] = EmbeddingVector{j.at("values").get<std::vector<double>>()};
    } catch (const json::exception&) {
      // A torn final line from an interrupted run; the entry is recomputed.
    }
  }
}

std::size_t CachedEmbeddingProvider::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

std::size_t CachedEmbeddingProvider::misses() const {
  std::lock_guard lock(mu_);
  return misses_;
}

std::string CachedEmbeddingProvider::key_for(const std::string& text) const {
  return sha256_hex(inner_.name() + '\n' + inner_.model() + '\n' + text);
}

EmbeddingVector CachedEmbeddingProvider::embed_normalized(const std::string& text) {
  const std::string key = key_for(text);
  {
    std::lock_guard lock(mu_);
    if (auto it = entries_.find(key); it != entries_.end()) {
      ++hits_;
      return it->second;
    }
  }
  EmbeddingVector v = inner_.embed(text);
  std::lock_guard lock(mu_);
  ++misses_;
  entries_[key] = v;
  if (!path_.empty()) {
    std::ofstream out(path_, std::ios::app);
    out << json{{"key", key}, {"values", v.values}}.dump() << '\n';
  }
  return v;
}

}  // namespace ger
