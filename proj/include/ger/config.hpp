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
#include <string>
#include <string_view>

namespace ger {

// Flat key = value document. Keys are dotted ("retrieval.tau_node"); a
// "[section]" line prefixes the keys that follow it. '#' starts a comment
// line. Relative paths are resolved against the directory of the file.
class Config {
 public:
  // Throws ConfigError on malformed lines, duplicate keys, unknown keys and
  // secrets.
  static Config parse(std::string_view text, std::string base_dir = ".");
  static Config load(const std::string& path);

  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, std::string fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  // Path values resolved against base_dir(); empty when unset.
  std::string get_path(const std::string& key) const;

  void set(const std::string& key, std::string value);
  bool contains(const std::string& key) const { return entries_.contains(key); }

  const std::map<std::string, std::string>& entries() const { return entries_; }
  const std::string& base_dir() const { return base_dir_; }

  // Canonical form: sorted "key = value" lines.
  std::string serialize() const;

 private:
  std::map<std::string, std::string> entries_;
  std::string base_dir_ = ".";
};

// Whether `key` is part of the documented configuration surface.
bool is_known_config_key(std::string_view key);

}  // namespace ger
