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
#include <string>
#include <vector>

#include "json.hpp"
#include "ger/corpus.hpp"

namespace ger {

struct SkippedRecord {
  std::string file;
  std::string record;
  std::string reason;
};

struct ConversionReport {
  std::vector<std::string> recognized_files;
  std::size_t pair_count = 0;
  std::size_t triple_count = 0;
  std::array<std::size_t, 5> class_counts{};
  std::size_t unlabeled_triples = 0;
  std::vector<SkippedRecord> skipped;
  // Tolerated irregularities (absent objects, guessed sentence indices).
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
};

struct ConversionResult {
  Corpus corpus;
  ConversionReport report;
};

// Converts a directory of NIR release files (JSON or JSON-lines story-pair
// records) into the canonical corpus. The recognized record layouts are
// listed in docs/nir_conversion.md. Throws ConversionError when the
// directory holds no candidate files and SchemaError when none of them has
// a recognized layout.
ConversionResult convert_nir(const std::string& src_dir);

// convert_nir plus writing the corpus to `dst`.
ConversionReport convert_nir(const std::string& src_dir, const std::string& dst_file);

}  // namespace ger
