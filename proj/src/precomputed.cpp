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

#include "ger/precomputed.hpp"

#include "json.hpp"
#include "ger/error.hpp"
#include "ger/text.hpp"

namespace ger {

using nlohmann::json;

template <typename Map>
const typename Map::mapped_type* PrecomputedLabelSource::lookup(const Map& map, const InstanceKey& key) {
  if (auto it = map.find(Key{key.pair_id, key.direction, key.triple_id}); it != map.end()) return &it->second;
  if (auto it = map.find(Key{key.pair_id, std::nullopt, key.triple_id}); it != map.end()) return &it->second;
  return nullptr;
}

PrecomputedLabelSource PrecomputedLabelSource::load(const std::string& path) {
  PrecomputedLabelSource src;
  const std::string text = read_file(path);
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (collapse_whitespace(line).empty()) continue;
    const std::string where = path + " line " + std::to_string(line_no);
    try {
      json j = json::parse(line);
      const std::string pair_id = j.at("pair_id").is_string() ? j.at("pair_id").get<std::string>()
                                                              : j.at("pair_id").dump();
      const std::string triple_id = j.at("triple_id").is_string() ? j.at("triple_id").get<std::string>()
                                                                  : j.at("triple_id").dump();
      std::optional<Direction> direction;
      if (j.contains("direction") && !j["direction"].is_null()) {
        direction = parse_direction(j["direction"].get<std::string>());
        if (!direction) throw SchemaError(where + ": bad direction");
      }
      if (j.contains("label")) {
        const std::string raw = j["label"].get<std::string>();
        if (auto rel = parse_relevance_label(raw)) {
          src.add_label(pair_id, direction, triple_id, *rel);
        } else if (auto type = parse_event_type(raw)) {
          src.add_label(pair_id, direction, triple_id, external_prediction_to_relevance(*type));
        } else {
          throw SchemaError(where + ": unknown label '" + raw + "'");
        }
      } else if (j.contains("support_ids")) {
        std::vector<std::string> ids;
        for (const auto& v : j["support_ids"]) ids.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        src.add_support(pair_id, direction, triple_id, std::move(ids));
      } else {
        throw SchemaError(where + ": record has neither 'label' nor 'support_ids'");
      }
    } catch (const json::exception& e) {
      throw SchemaError(where + ": " + e.what());
    }
  }
  return src;
}

void PrecomputedLabelSource::add_label(const std::string& pair_id, std::optional<Direction> direction,
                                       const std::string& triple_id, RelevanceLabel label) {
  labels_[Key{pair_id, direction, triple_id}] = label;
}

void PrecomputedLabelSource::add_support(const std::string& pair_id, std::optional<Direction> direction,
                                         const std::string& triple_id, std::vector<std::string> support_ids) {
  support_[Key{pair_id, direction, triple_id}] = std::move(support_ids);
}

RelevanceLabel PrecomputedLabelSource::label(const InstanceKey& key) const {
  if (const auto* l = lookup(labels_, key)) return *l;
  throw MissingPrediction("no precomputed label for " + key.to_string());
}

const std::vector<std::string>& PrecomputedLabelSource::support_ids(const InstanceKey& key) const {
  if (const auto* s = lookup(support_, key)) return *s;
  throw MissingPrediction("no precomputed support events for " + key.to_string());
}

}  // namespace ger
