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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace ger {

enum class TemplateId { BasePredict, SupportClassify, Rethink, Explore, ConsistencyDiscriminate };

inline constexpr std::array<TemplateId, 5> kAllTemplates = {TemplateId::BasePredict, TemplateId::SupportClassify,
                                                            TemplateId::Rethink, TemplateId::Explore,
                                                            TemplateId::ConsistencyDiscriminate};

std::string_view to_string(TemplateId id);
std::optional<TemplateId> parse_template_id(std::string_view text);

using Bindings = std::map<std::string, std::string>;

// Prompt text with {name} placeholders; "{{" and "}}" are literal braces.
class PromptTemplate {
 public:
  PromptTemplate(TemplateId id, std::string text);

  TemplateId id() const { return id_; }
  const std::string& text() const { return text_; }
  const std::set<std::string>& placeholders() const { return placeholders_; }

  // Throws TemplateError when a placeholder in the text has no binding.
  std::string render(const Bindings& bindings) const;

 private:
  TemplateId id_;
  std::string text_;
  std::set<std::string> placeholders_;
};

// The versioned set of templates plus optional per-template few-shot
// blocks. Catalog files are plain text: a "=== TemplateId ===" line starts
// each template; lines starting with '#' before the first header are
// comments.
class PromptCatalog {
 public:
  static PromptCatalog defaults();
  static PromptCatalog parse(std::string_view text);
  static PromptCatalog load(const std::string& path);

  const PromptTemplate& get(TemplateId id) const;
  std::string serialize() const;

  void set_few_shot(TemplateId id, std::string block);
  const std::string& few_shot(TemplateId id) const;

  // SHA-256 over the serialized templates and few-shot blocks.
  std::string hash() const;

 private:
  std::map<TemplateId, PromptTemplate> templates_;
  std::map<TemplateId, std::string> few_shots_;
};

// The catalog text compiled into the library (also shipped as
// prompts/default_catalog.txt).
std::string_view default_catalog_text();

}  // namespace ger
