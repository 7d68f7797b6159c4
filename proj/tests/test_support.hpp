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

#include <filesystem>
#include <string>
#include <string_view>

#include "ger/corpus.hpp"
#include "ger/embed.hpp"
#include "ger/llm.hpp"

namespace ger::testing {

std::string data_path(std::string_view name);
std::string source_path(std::string_view relative);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(std::string_view name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

EmbeddingVector basis(std::size_t dimension, std::size_t axis);

EventTriple triple(std::string id, std::string subject, std::string predicate, std::optional<std::string> object,
                   std::size_t sentence = 0, std::optional<EventType> gold = std::nullopt);

// Scripts every exchange of every instance with the answer its gold label
// implies, and "ANSWER: 1" for support classification.
void script_gold(MockChatProvider& mock, const Corpus& corpus);

}  // namespace ger::testing
