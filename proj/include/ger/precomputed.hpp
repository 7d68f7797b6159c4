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

#include <map>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "ger/corpus.hpp"
#include "ger/types.hpp"

namespace ger {

// Predictions produced outside this pipeline: a base classifier's labels
// (e.g. SEEN) or gold support events for ablations. The file is JSON lines
// of {"pair_id", "triple_id", "direction"?, "label"} or
// {"pair_id", "triple_id", "direction"?, "support_ids"}. "direction" is
// "pre" or "post" (the story holding the triple); without it the record
// matches either story. A five-way "label" is reduced to relevance with
// Consistent and Unforgotten counting as Relevant.
class PrecomputedLabelSource {
 public:
  static PrecomputedLabelSource load(const std::string& path);

  void add_label(const std::string& pair_id, std::optional<Direction> direction, const std::string& triple_id,
                 RelevanceLabel label);
  void add_support(const std::string& pair_id, std::optional<Direction> direction, const std::string& triple_id,
                   std::vector<std::string> support_ids);

  // Throw MissingPrediction when the instance is not covered.
  RelevanceLabel label(const InstanceKey& key) const;
  const std::vector<std::string>& support_ids(const InstanceKey& key) const;

  std::size_t label_count() const { return labels_.size(); }
  std::size_t support_count() const { return support_.size(); }

 private:
  // Direction slot is empty for records that did not name one.
  using Key = std::tuple<std::string, std::optional<Direction>, std::string>;

  template <typename Map>
  static const typename Map::mapped_type* lookup(const Map& map, const InstanceKey& key);

  std::map<Key, RelevanceLabel> labels_;
  std::map<Key, std::vector<std::string>> support_;
};

}  // namespace ger
