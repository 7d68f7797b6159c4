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

#include "ger/config.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <sstream>

#include "ger/error.hpp"
#include "ger/prompts.hpp"
#include "ger/text.hpp"

namespace ger {

namespace {

constexpr std::array kFixedKeys = {
    "base.source",        "base.provider",         "base.file",
    "support.kg",         "support.llm",           "support.oracle_file",
    "correction.provider", "discriminator.provider", "retrieval.tau_node",
    "retrieval.tau_triple", "retrieval.aggregation", "prompts.catalog",
    "embed.kind",         "embed.dimension",       "embed.model",
    "embed.endpoint",     "embed.cache",           "embed.planted",
    "embed.max_in_flight", "cache.responses",      "run.workers",
};

constexpr std::array kProviderFields = {"kind",        "model",        "endpoint",   "script",
                                        "max_in_flight", "max_attempts", "backoff_ms", "temperature"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool looks_secret(std::string_view key) {
  const std::string k = to_lower(key);
  return k.find("api_key") != std::string::npos || k.find("apikey") != std::string::npos ||
         k.find("secret") != std::string::npos || k.find("token") != std::string::npos;
}

}  // namespace

bool is_known_config_key(std::string_view key) {
  for (std::string_view k : kFixedKeys) {
    if (k == key) return true;
  }
  if (key.starts_with("fewshot.")) return parse_template_id(key.substr(8)).has_value();
  if (key.starts_with("provider.")) {
    const auto rest = key.substr(9);
    const auto dot = rest.rfind('.');
    if (dot == std::string_view::npos || dot == 0) return false;
    const auto name = rest.substr(0, dot);
    if (name.find('.') != std::string_view::npos) return false;
    const auto field = rest.substr(dot + 1);
    for (std::string_view f : kProviderFields) {
      if (f == field) return true;
    }
  }
  return false;
}

Config Config::parse(std::string_view text, std::string base_dir) {
  Config cfg;
  cfg.base_dir_ = std::move(base_dir);
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "config line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw ConfigError(where + ": malformed section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    if (!section.empty()) key = section + "." + key;
    if (looks_secret(key)) {
      throw ConfigError(where + ": '" + key + "' looks like a secret; API keys are read from GER_CHAT_API_KEY / GER_EMBED_API_KEY");
    }
    if (!is_known_config_key(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    if (!cfg.entries_.emplace(key, std::move(value)).second) {
      throw ConfigError(where + ": duplicate key '" + key + "'");
    }
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  auto dir = std::filesystem::path(path).parent_path().string();
  return parse(text, dir.empty() ? "." : dir);
}

std::optional<std::string> Config::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string Config::get_or(const std::string& key, std::string fallback) const {
  auto v = get(key);
  return v ? *v : std::move(fallback);
}

double Config::get_double(const std::string& key, double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    double d = std::stod(*v, &used);
    if (used != v->size()) throw std::invalid_argument(*v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "' is not a number: " + *v);
  }
}

long Config::get_int(const std::string& key, long fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  long out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size()) {
    throw ConfigError("'" + key + "' is not an integer: " + *v);
  }
  return out;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  const std::string s = to_lower(*v);
  if (s == "true" || s == "on" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "off" || s == "no" || s == "0") return false;
  throw ConfigError("'" + key + "' is not a boolean: " + *v);
}

std::string Config::get_path(const std::string& key) const {
  auto v = get(key);
  if (!v || v->empty()) return {};
  std::filesystem::path p(*v);
  if (p.is_absolute()) return p.string();
  return (std::filesystem::path(base_dir_) / p).lexically_normal().string();
}

void Config::set(const std::string& key, std::string value) {
  if (!is_known_config_key(key)) throw ConfigError("unknown key '" + key + "'");
  entries_[key] = std::move(value);
}

std::string Config::serialize() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

}  // namespace ger
