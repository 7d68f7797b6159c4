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

#include "ger/prompts.hpp"

#include <cctype>
#include <sstream>

#include "ger/error.hpp"
#include "ger/text.hpp"

namespace ger {

namespace {

constexpr std::string_view kDefaultCatalog = R"catalog(# GER prompt catalog, version 1.
# Every template ends by asking for a final "ANSWER:" line; the parsers read
# the last answer in the reply.

=== BasePredict ===
You help a person recall their own life experiences. Below is a story the
person wrote earlier or later (the reference story) and one event taken from
another telling of the same experiences (the query).

Decide whether the query is Relevant or Irrelevant to the reference story.
- Relevant: the reference story describes this event or details of it, whether
  the description agrees with the query or conflicts with it.
- Irrelevant: nothing in the reference story relates to the event in the query.
{few_shot_block}
Reference story:
{reference_story}

Query: {query}

Think briefly, then finish with exactly one final line:
ANSWER: Relevant
or
ANSWER: Irrelevant

=== SupportClassify ===
You help a person recall their own life experiences. Below is a reference
story, the list of events extracted from it (each with an ID), and a query
event taken from another telling of the same experiences.

Compare each listed event with the query. Select the
events that describe the same experience as the query or details of it,
including events that conflict with it. Do not select events that are only
loosely associated.
{few_shot_block}
Reference story:
{reference_story}

Events:
{reference_events}

Query: {query}

Finish with exactly one final line listing the selected IDs:
ANSWER: <comma-separated IDs>
or, when no event is related:
ANSWER: none

=== Rethink ===
A first judgement said the query below is Relevant to the reference story, but
no supporting event for it was found in the person's knowledge graph. The
first judgement may have relied on assumed or loosely associated details.

Reconsider whether the reference story really contains information related to
the query. Set aside anything that is not actually stated in the story.
{few_shot_block}
Reference story:
{reference_story}

Events found related to the query: {support_events}

Query: {query}

Finish with exactly one final line:
ANSWER: Relevant
or
ANSWER: Irrelevant

=== Explore ===
A first judgement said the query below is Irrelevant to the reference story,
but the following events from the person's knowledge graph were found to be
related to it. Use these support events as a guide and look for the parts of
the reference story that relate to the query.
{few_shot_block}
Support events:
{support_events}

Reference story:
{reference_story}

Query: {query}

Finish with exactly one final line:
ANSWER: Relevant
or
ANSWER: Irrelevant

=== ConsistencyDiscriminate ===
You help a person recall their own life experiences. The query below is an
event from a later telling; the reference story is the earlier record.

Work through these steps:
1. Find the parts of the reference story that concern the query.
2. If nothing in those parts plainly conflicts with the query, answer Consistent.
3. If those parts plainly conflict with the query, answer Inconsistent.
{few_shot_block}
Reference story:
{reference_story}

Query: {query}

Finish with exactly one final line:
ANSWER: Consistent
or
ANSWER: Inconsistent
)catalog";

std::set<std::string> scan_placeholders(TemplateId id, const std::string& text) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '{') {
      if (i + 1 < text.size() && text[i + 1] == '{') {
        ++i;
        continue;
      }
      const auto close = text.find('}', i);
      if (close == std::string::npos) {
        throw TemplateError(std::string(to_string(id)) + ": unterminated placeholder");
      }
      const std::string name = text.substr(i + 1, close - i - 1);
      for (char c : name) {
        if (!(std::islower(static_cast<unsigned char>(c)) || c == '_')) {
          throw TemplateError(std::string(to_string(id)) + ": bad placeholder name '" + name + "'");
        }
      }
      names.insert(name);
      i = close;
    } else if (text[i] == '}' && i + 1 < text.size() && text[i + 1] == '}') {
      ++i;
    }
  }
  return names;
}

std::string trim_blank_lines(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && s[start] == '\n') ++start;
  return s.substr(start);
}

}  // namespace

std::string_view default_catalog_text() { return kDefaultCatalog; }

std::string_view to_string(TemplateId id) {
  switch (id) {
    case TemplateId::BasePredict: return "BasePredict";
    case TemplateId::SupportClassify: return "SupportClassify";
    case TemplateId::Rethink: return "Rethink";
    case TemplateId::Explore: return "Explore";
    case TemplateId::ConsistencyDiscriminate: return "ConsistencyDiscriminate";
  }
  return "?";
}

std::optional<TemplateId> parse_template_id(std::string_view text) {
  for (TemplateId id : kAllTemplates) {
    if (normalize_text(text) == to_lower(to_string(id))) return id;
  }
  return std::nullopt;
}

PromptTemplate::PromptTemplate(TemplateId id, std::string text)
    : id_(id), text_(std::move(text)), placeholders_(scan_placeholders(id_, text_)) {}

std::string PromptTemplate::render(const Bindings& bindings) const {
  for (const auto& name : placeholders_) {
    if (!bindings.contains(name)) {
      throw TemplateError(std::string(to_string(id_)) + ": placeholder {" + name + "} is unbound");
    }
  }
  std::string out;
  out.reserve(text_.size() * 2);
  for (std::size_t i = 0; i < text_.size(); ++i) {
    const char c = text_[i];
    if ((c == '{' || c == '}') && i + 1 < text_.size() && text_[i + 1] == c) {
      out.push_back(c);
      ++i;
    } else if (c == '{') {
      const auto close = text_.find('}', i);
      out += bindings.at(text_.substr(i + 1, close - i - 1));
      i = close;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

PromptCatalog PromptCatalog::defaults() { return parse(kDefaultCatalog); }

PromptCatalog PromptCatalog::parse(std::string_view text) {
  PromptCatalog catalog;
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<TemplateId> current;
  std::string body;
  auto flush = [&] {
    if (!current) return;
    if (catalog.templates_.contains(*current)) {
      throw TemplateError("prompt catalog defines " + std::string(to_string(*current)) + " twice");
    }
    catalog.templates_.emplace(*current, PromptTemplate(*current, trim_blank_lines(body)));
    body.clear();
  };
  while (std::getline(in, line)) {
    if (line.starts_with("=== ") && line.ends_with(" ===") && line.size() > 8) {
      flush();
      const std::string name = line.substr(4, line.size() - 8);
      current = parse_template_id(name);
      if (!current) throw TemplateError("prompt catalog: unknown template '" + name + "'");
      continue;
    }
    if (!current) {
      if (line.empty() || line.starts_with("#")) continue;
      throw TemplateError("prompt catalog: text before the first template header");
    }
    body += line;
    body += '\n';
  }
  flush();
  for (TemplateId id : kAllTemplates) {
    if (!catalog.templates_.contains(id)) {
      throw TemplateError("prompt catalog lacks template " + std::string(to_string(id)));
    }
  }
  return catalog;
}

PromptCatalog PromptCatalog::load(const std::string& path) { return parse(read_file(path)); }

const PromptTemplate& PromptCatalog::get(TemplateId id) const { return templates_.at(id); }

std::string PromptCatalog::serialize() const {
  std::string out;
  for (const auto& [id, t] : templates_) {
    out += "=== " + std::string(to_string(id)) + " ===\n" + t.text() + "\n\n";
  }
  return out;
}

void PromptCatalog::set_few_shot(TemplateId id, std::string block) { few_shots_[id] = std::move(block); }

const std::string& PromptCatalog::few_shot(TemplateId id) const {
  static const std::string kEmpty;
  auto it = few_shots_.find(id);
  return it == few_shots_.end() ? kEmpty : it->second;
}

std::string PromptCatalog::hash() const {
  std::string material = serialize();
  for (const auto& [id, block] : few_shots_) {
    material += "--- few-shot " + std::string(to_string(id)) + "\n" + block + "\n";
  }
  return sha256_hex(material);
}

}  // namespace ger
