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

#include <string>
#include <vector>

#include "json.hpp"
#include "ger/runtime.hpp"

namespace ger {

inline constexpr const char* kArtifactVersion = "0.1.0";

// Provenance written next to every predictions file as
// <predictions>.manifest.json.
struct RunManifest {
  std::string artifact_version = kArtifactVersion;
  std::string config_dir;
  std::string config_snapshot;
  std::string prompt_catalog_hash;
  std::string corpus_path;
  std::string corpus_hash;
  std::string predictions_hash;
  std::vector<ProviderInfo> providers;
  std::size_t instances = 0;
  std::size_t failed = 0;
  std::string started_at;
  std::string finished_at;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

std::string manifest_path_for(const std::string& predictions_path);

// ISO-8601 UTC. SOURCE_DATE_EPOCH, when set, replaces the wall clock.
std::string utc_timestamp();

void write_manifest(const std::string& path, const RunManifest& m);
RunManifest read_manifest(const std::string& path);

struct VerifyResult {
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

// Recomputes the corpus, predictions and prompt-catalog hashes and compares
// them to the manifest.
VerifyResult verify_manifest(const RunManifest& m, const std::string& predictions_path,
                             const std::string& corpus_path);

}  // namespace ger
