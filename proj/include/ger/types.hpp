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

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace ger {

enum class EventType { Consistent, Inconsistent, Additional, Forgotten, Unforgotten };

inline constexpr std::array<EventType, 5> kAllEventTypes = {
    EventType::Consistent, EventType::Inconsistent, EventType::Additional,
    EventType::Forgotten, EventType::Unforgotten};

inline constexpr std::size_t index_of(EventType t) { return static_cast<std::size_t>(t); }

std::string_view to_string(EventType t);
// CST, INC, ADD, FGT, UFG.
std::string_view abbreviation(EventType t);
// Accepts full names and abbreviations, case-insensitively.
std::optional<EventType> parse_event_type(std::string_view text);

enum class RelevanceLabel { Relevant, Irrelevant };

std::string_view to_string(RelevanceLabel l);
std::optional<RelevanceLabel> parse_relevance_label(std::string_view text);

// Consistent, Inconsistent and Unforgotten have related descriptions in the
// reference story; Additional and Forgotten do not.
RelevanceLabel collapse_to_relevance(EventType t);

// Five-way predictions from an external classifier (e.g. SEEN) only count
// Consistent and Unforgotten as Relevant.
RelevanceLabel external_prediction_to_relevance(EventType t);

enum class StoryRole { PreRetold, PostRetold };

std::string_view to_string(StoryRole r);

// Which story the query triple comes from. The other story is the reference.
enum class Direction { TargetIsPre, TargetIsPost };

std::string_view to_string(Direction d);
// "pre" / "post", used in instance keys and file formats.
std::string_view short_name(Direction d);
std::optional<Direction> parse_direction(std::string_view text);

inline StoryRole target_role(Direction d) {
  return d == Direction::TargetIsPre ? StoryRole::PreRetold : StoryRole::PostRetold;
}
inline StoryRole reference_role(Direction d) {
  return d == Direction::TargetIsPre ? StoryRole::PostRetold : StoryRole::PreRetold;
}

// Event types admissible for a query in the given direction.
bool admissible(EventType t, Direction d);

}  // namespace ger
