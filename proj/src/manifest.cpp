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

#include "ger/manifest.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>

#include "ger/error.hpp"
#include "ger/text.hpp"

namespace ger {

using nlohmann::json;

json RunManifest::to_json() const {
  json providers_json = json::array();
  for (const auto& p : providers) providers_json.push_back({{"role", p.role}, {"name", p.name}, {"model", p.model}});
  return {{"artifact_version", artifact_version},
          {"config_dir", config_dir},
          {"config_snapshot", config_snapshot},
          {"prompt_catalog_hash", prompt_catalog_hash},
          {"corpus_path", corpus_path},
          {"corpus_hash", corpus_hash},
          {"predictions_hash", predictions_hash},
          {"providers", providers_json},
          {"instances", instances},
          {"failed", failed},
          {"started_at", started_at},
          {"finished_at", finished_at}};
}

RunManifest RunManifest::from_json(const json& j) {
  try {
    RunManifest m;
    m.artifact_version = j.at("artifact_version").get<std::string>();
    m.config_dir = j.at("config_dir").get<std::string>();
    m.config_snapshot = j.at("config_snapshot").get<std::string>();
    m.prompt_catalog_hash = j.at("prompt_catalog_hash").get<std::string>();
    m.corpus_path = j.at("corpus_path").get<std::string>();
    m.corpus_hash = j.at("corpus_hash").get<std::string>();
    m.predictions_hash = j.at("predictions_hash").get<std::string>();
    for (const auto& p : j.at("providers")) {
      m.providers.push_back(
          {p.at("role").get<std::string>(), p.at("name").get<std::string>(), p.at("model").get<std::string>()});
    }
    m.instances = j.at("instances").get<std::size_t>();
    m.failed = j.at("failed").get<std::size_t>();
    m.started_at = j.at("started_at").get<std::string>();
    m.finished_at = j.at("finished_at").get<std::string>();
    return m;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("manifest: ") + e.what());
  }
}

std::string manifest_path_for(const std::string& predictions_path) { return predictions_path + ".manifest.json"; }

std::string utc_timestamp() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (*end != '\0' || v < 0) throw ConfigError(std::string("SOURCE_DATE_EPOCH is not a timestamp: ") + epoch);
    t = static_cast<std::time_t>(v);
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::string& path, const RunManifest& m) { write_file(path, m.to_json().dump(2) + "\n"); }

RunManifest read_manifest(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return RunManifest::from_json(j);
}

VerifyResult verify_manifest(const RunManifest& m, const std::string& predictions_path,
                             const std::string& corpus_path) {
  VerifyResult r;
  if (sha256_hex(read_file(corpus_path)) != m.corpus_hash) r.mismatches.push_back("corpus hash differs");
  if (sha256_hex(read_file(predictions_path)) != m.predictions_hash) {
    r.mismatches.push_back("predictions hash differs");
  }
  try {
    const Config cfg = Config::parse(m.config_snapshot, m.config_dir.empty() ? "." : m.config_dir);
    if (load_catalog(cfg).hash() != m.prompt_catalog_hash) r.mismatches.push_back("prompt catalog hash differs");
  } catch (const Error& e) {
    r.mismatches.push_back(std::string("prompt catalog could not be reloaded: ") + e.what());
  }
  return r;
}

}  // namespace ger
