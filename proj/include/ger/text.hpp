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

#include <cstdint>
#include <string>
#include <string_view>

namespace ger {

// Trims and collapses internal whitespace runs to one space.
std::string collapse_whitespace(std::string_view text);

// collapse_whitespace plus ASCII case folding. This is the identity used
// for every text comparison (node merging, support keys, caches).
std::string normalize_text(std::string_view text);

std::string to_lower(std::string_view text);

// Lowercase hex SHA-256 of the bytes of `data`.
std::string sha256_hex(std::string_view data);

// First eight bytes of SHA-256, big-endian. Stable across platforms.
std::uint64_t stable_hash64(std::string_view data);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace ger
