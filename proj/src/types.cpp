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

#include "ger/types.hpp"

#include "ger/text.hpp"

namespace ger {

std::string_view to_string(EventType t) {
  switch (t) {
    case EventType::Consistent: return "Consistent";
    case EventType::Inconsistent: return "Inconsistent";
    case EventType::Additional: return "Additional";
    case EventType::Forgotten: return "Forgotten";
    case EventType::Unforgotten: return "Unforgotten";
  }
  return "?";
}

std::string_view abbreviation(EventType t) {
  switch (t) {
    case EventType::Consistent: return "CST";
    case EventType::Inconsistent: return "INC";
    case EventType::Additional: return "ADD";
    case EventType::Forgotten: return "FGT";
    case EventType::Unforgotten: return "UFG";
  }
  return "?";
}

std::optional<EventType> parse_event_type(std::string_view text) {
  const std::string key = normalize_text(text);
  for (EventType t : kAllEventTypes) {
    if (key == to_lower(to_string(t)) || key == to_lower(abbreviation(t))) return t;
  }
  return std::nullopt;
}

std::string_view to_string(RelevanceLabel l) {
  return l == RelevanceLabel::Relevant ? "Relevant" : "Irrelevant";
}

std::optional<RelevanceLabel> parse_relevance_label(std::string_view text) {
  const std::string key = normalize_text(text);
  if (key == "relevant") return RelevanceLabel::Relevant;
  if (key == "irrelevant") return RelevanceLabel::Irrelevant;
  return std::nullopt;
}

RelevanceLabel collapse_to_relevance(EventType t) {
  switch (t) {
    case EventType::Consistent:
    case EventType::Inconsistent:
    case EventType::Unforgotten:
      return RelevanceLabel::Relevant;
    case EventType::Additional:
    case EventType::Forgotten:
      return RelevanceLabel::Irrelevant;
  }
  return RelevanceLabel::Irrelevant;
}

RelevanceLabel external_prediction_to_relevance(EventType t) {
  return (t == EventType::Consistent || t == EventType::Unforgotten) ? RelevanceLabel::Relevant
                                                                     : RelevanceLabel::Irrelevant;
}

std::string_view to_string(StoryRole r) {
  return r == StoryRole::PreRetold ? "PreRetold" : "PostRetold";
}

std::string_view to_string(Direction d) {
  return d == Direction::TargetIsPre ? "TargetIsPre" : "TargetIsPost";
}

std::string_view short_name(Direction d) { return d == Direction::TargetIsPre ? "pre" : "post"; }

std::optional<Direction> parse_direction(std::string_view text) {
  const std::string key = normalize_text(text);
  if (key == "pre" || key == "targetispre") return Direction::TargetIsPre;
  if (key == "post" || key == "targetispost") return Direction::TargetIsPost;
  return std::nullopt;
}

bool admissible(EventType t, Direction d) {
  if (d == Direction::TargetIsPre) return t == EventType::Forgotten || t == EventType::Unforgotten;
  return t == EventType::Consistent || t == EventType::Inconsistent || t == EventType::Additional;
}

}  // namespace ger
