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

#include "ger/parse.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "ger/error.hpp"
#include "ger/text.hpp"

namespace ger {

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Lowercased words: maximal runs of letters, digits and underscores.
std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (is_word_char(c)) {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::optional<std::string> last_of(std::string_view text, std::string_view a, std::string_view b) {
  const auto ws = words(text);
  for (auto it = ws.rbegin(); it != ws.rend(); ++it) {
    if (*it == a || *it == b) return *it;
  }
  return std::nullopt;
}

std::string excerpt(std::string_view text) {
  std::string s = collapse_whitespace(text);
  if (s.size() > 80) s = s.substr(0, 77) + "...";
  return s;
}

}  // namespace

RelevanceLabel parse_relevance(std::string_view text) {
  auto found = last_of(text, "irrelevant", "relevant");
  if (!found) throw ParseError("no relevance label in reply: \"" + excerpt(text) + "\"");
  return *found == "irrelevant" ? RelevanceLabel::Irrelevant : RelevanceLabel::Relevant;
}

EventType parse_consistency(std::string_view text) {
  auto found = last_of(text, "inconsistent", "consistent");
  if (!found) throw ParseError("no consistency label in reply: \"" + excerpt(text) + "\"");
  return *found == "inconsistent" ? EventType::Inconsistent : EventType::Consistent;
}

ParsedSupportIds parse_support_ids(std::string_view text, const std::set<std::string>& valid_ids) {
  const std::string lower = to_lower(text);
  std::size_t marker_end = std::string::npos;
  for (std::string_view marker : {"answer:", "ids:"}) {
    const auto pos = lower.rfind(marker);
    if (pos != std::string::npos && (marker_end == std::string::npos || pos + marker.size() > marker_end)) {
      marker_end = pos + marker.size();
    }
  }
  ParsedSupportIds out;
  if (marker_end == std::string::npos) {
    const auto ws = words(text);
    if (ws.size() == 1 && ws[0] == "none") return out;
    throw ParseError("no answer marker in reply: \"" + excerpt(text) + "\"");
  }
  std::string_view rest = text.substr(marker_end);
  if (auto nl = rest.find('\n'); nl != std::string_view::npos) rest = rest.substr(0, nl);
  std::string cur;
  std::vector<std::string> tokens;
  for (char c : rest) {
    if (is_word_char(c) || c == '-') {
      cur.push_back(c);
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  for (const auto& token : tokens) {
    if (valid_ids.contains(token)) {
      out.ids.insert(token);
      continue;
    }
    const bool id_like = std::any_of(token.begin(), token.end(),
                                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (id_like) out.warnings.push_back("dropped unknown support id '" + token + "'");
  }
  return out;
}

}  // namespace ger
