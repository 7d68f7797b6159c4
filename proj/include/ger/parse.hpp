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

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ger/types.hpp"

namespace ger {

// Last whole-word, case-insensitive occurrence of "relevant" or
// "irrelevant". Throws ParseError when neither occurs.
RelevanceLabel parse_relevance(std::string_view text);

// Same rule over "consistent" / "inconsistent". Returns Consistent or
// Inconsistent.
EventType parse_consistency(std::string_view text);

struct ParsedSupportIds {
  std::set<std::string> ids;
  // One entry per id-like token that is not among the valid ids.
  std::vector<std::string> warnings;
};

// Reads the ids after the last "ANSWER:" or "IDs:" marker. "none" after the
// marker, or a bare "none" reply, yields an empty set. Tokens that look like
// ids (contain a digit) but are not valid are dropped with a warning.
// Throws ParseError when there is no marker.
ParsedSupportIds parse_support_ids(std::string_view text, const std::set<std::string>& valid_ids);

}  // namespace ger
