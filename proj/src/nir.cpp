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

#include "ger/nir.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <initializer_list>
#include <set>
#include <sstream>

#include "ger/error.hpp"
#include "ger/text.hpp"

namespace ger {

namespace fs = std::filesystem;
using nlohmann::json;

json ConversionReport::to_json() const {
  json classes = json::object();
  for (EventType t : kAllEventTypes) classes[std::string(to_string(t))] = class_counts[index_of(t)];
  json skipped_json = json::array();
  for (const auto& s : skipped) skipped_json.push_back({{"file", s.file}, {"record", s.record}, {"reason", s.reason}});
  return {{"recognized_files", recognized_files},
          {"pairs", pair_count},
          {"triples", triple_count},
          {"class_counts", classes},
          {"unlabeled_triples", unlabeled_triples},
          {"skipped", skipped_json},
          {"notes", notes}};
}

namespace {

const json* find_any(const json& obj, std::initializer_list<const char*> names) {
  if (!obj.is_object()) return nullptr;
  for (const char* n : names) {
    auto it = obj.find(n);
    if (it != obj.end() && !it->is_null()) return &*it;
  }
  return nullptr;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return v.dump();
}

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    current.push_back(text[i]);
    const bool terminal = text[i] == '.' || text[i] == '!' || text[i] == '?';
    const bool boundary = i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1]));
    if (terminal && boundary) {
      if (auto s = collapse_whitespace(current); !s.empty()) out.push_back(s);
      current.clear();
    }
  }
  if (auto s = collapse_whitespace(current); !s.empty()) out.push_back(s);
  return out;
}

std::vector<std::string> story_sentences(const json& v) {
  if (v.is_string()) return split_sentences(v.get<std::string>());
  if (v.is_array()) {
    std::vector<std::string> out;
    for (const auto& s : v) {
      if (!s.is_string()) throw SchemaError("story sentences must be strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  }
  if (v.is_object()) {
    if (const json* inner = find_any(v, {"sentences", "text", "story", "content"})) return story_sentences(*inner);
  }
  throw SchemaError("story must be a string, an array of sentences or an object with 'sentences'");
}

struct RawTriple {
  std::optional<std::string> id;
  std::string subject;
  std::string predicate;
  std::optional<std::string> object;
  std::optional<std::size_t> sentence_index;
  std::optional<std::string> label;
};

RawTriple raw_triple(const json& v) {
  RawTriple r;
  if (v.is_array()) {
    if (v.size() < 2) throw SchemaError("triple array needs at least subject and predicate");
    r.subject = scalar_text(v[0]);
    r.predicate = scalar_text(v[1]);
    if (v.size() > 2 && !v[2].is_null()) r.object = scalar_text(v[2]);
    if (v.size() > 3 && v[3].is_string()) r.label = v[3].get<std::string>();
    if (v.size() > 4 && v[4].is_number_integer()) r.sentence_index = v[4].get<std::size_t>();
    return r;
  }
  if (!v.is_object()) throw SchemaError("triple must be an object or an array");
  const json* s = find_any(v, {"subject", "sub", "subj", "s", "arg0"});
  const json* p = find_any(v, {"predicate", "pred", "relation", "rel", "p", "verb"});
  if (!s || !p) throw SchemaError("triple lacks subject or predicate");
  r.subject = scalar_text(*s);
  r.predicate = scalar_text(*p);
  if (const json* o = find_any(v, {"object", "obj", "o", "arg1"})) r.object = scalar_text(*o);
  if (const json* i = find_any(v, {"sentence_index", "sentence_id", "sent_id", "sid", "sent_idx"})) {
    if (i->is_number_integer() && i->get<long long>() >= 0) r.sentence_index = i->get<std::size_t>();
  }
  if (const json* l = find_any(v, {"gold_label", "label", "event_type", "type", "tag"})) r.label = scalar_text(*l);
  if (const json* id = find_any(v, {"triple_id", "event_id", "id"})) r.id = scalar_text(*id);
  return r;
}

class Converter {
 public:
  explicit Converter(ConversionReport& report) : report_(report) {}

  // Returns false when the record does not look like a story pair at all.
  bool convert_record(const json& rec, const std::string& file, const std::string& fallback_id, Corpus& out) {
    const json* pre = find_any(rec, {"pre", "pre_story", "pre_retold", "story_a", "storyA", "A", "story1"});
    const json* post = find_any(rec, {"post", "post_story", "post_retold", "story_b", "storyB", "B", "story2"});
    if (!pre || !post) return false;
    StoryPair pair;
    const json* id = find_any(rec, {"pair_id", "id", "story_id", "idx", "index"});
    pair.pair_id = id ? scalar_text(*id) : fallback_id;
    if (!used_ids_.insert(pair.pair_id).second) {
      report_.skipped.push_back({file, pair.pair_id, "duplicate pair id"});
      return true;
    }
    try {
      pair.pre = make_story(pair.pair_id + "-A", StoryRole::PreRetold, *pre,
                            find_any(rec, {"pre_triples", "triples_a", "events_a", "pre_events", "A_triples"}),
                            file, pair.pair_id);
      pair.post = make_story(pair.pair_id + "-B", StoryRole::PostRetold, *post,
                             find_any(rec, {"post_triples", "triples_b", "events_b", "post_events", "B_triples"}),
                             file, pair.pair_id);
      validate_pair(pair);
    } catch (const Error& e) {
      report_.skipped.push_back({file, pair.pair_id, e.what()});
      return true;
    }
    out.push_back(std::move(pair));
    return true;
  }

 private:
  Story make_story(std::string story_id, StoryRole role, const json& story_json, const json* triples_json,
                   const std::string& file, const std::string& pair_id) {
    Story story;
    story.story_id = std::move(story_id);
    story.role = role;
    story.sentences = story_sentences(story_json);
    if (!triples_json && story_json.is_object()) triples_json = find_any(story_json, {"triples", "events"});
    if (!triples_json) return story;
    if (!triples_json->is_array()) throw SchemaError("triples must be an array");
    const Direction d = role == StoryRole::PreRetold ? Direction::TargetIsPre : Direction::TargetIsPost;
    std::set<std::string> ids;
    std::size_t ordinal = 0;
    for (const auto& jt : *triples_json) {
      ++ordinal;
      const std::string where = pair_id + "/" + std::string(short_name(d)) + "#" + std::to_string(ordinal);
      RawTriple raw;
      try {
        raw = raw_triple(jt);
      } catch (const SchemaError& e) {
        report_.skipped.push_back({file, where, e.what()});
        continue;
      }
      EventTriple t;
      t.triple_id = raw.id.value_or("t" + std::to_string(ordinal));
      if (!ids.insert(t.triple_id).second) t.triple_id += "_" + std::to_string(ordinal);
      t.subject = raw.subject;
      t.predicate = raw.predicate;
      if (collapse_whitespace(t.subject).empty() || collapse_whitespace(t.predicate).empty()) {
        report_.skipped.push_back({file, where, "empty subject or predicate"});
        continue;
      }
      if (raw.object && !collapse_whitespace(*raw.object).empty()) {
        t.object = raw.object;
      } else {
        report_.notes.push_back(where + ": object absent");
      }
      if (raw.label) {
        t.gold_label = parse_event_type(*raw.label);
        if (!t.gold_label) {
          report_.skipped.push_back({file, where, "unknown label '" + *raw.label + "'"});
          continue;
        }
        if (!admissible(*t.gold_label, d)) {
          report_.skipped.push_back(
              {file, where, std::string(to_string(*t.gold_label)) + " is not valid for this story"});
          continue;
        }
      }
      if (raw.sentence_index && *raw.sentence_index < story.sentences.size()) {
        t.sentence_index = *raw.sentence_index;
      } else {
        t.sentence_index = locate_sentence(story.sentences, t);
        report_.notes.push_back(where + ": sentence index inferred as " + std::to_string(t.sentence_index));
      }
      if (story.sentences.empty()) {
        report_.skipped.push_back({file, where, "story has no sentences"});
        continue;
      }
      story.triples.push_back(std::move(t));
    }
    return story;
  }

  static std::size_t locate_sentence(const std::vector<std::string>& sentences, const EventTriple& t) {
    const std::string subject = normalize_text(t.subject);
    const std::string predicate = normalize_text(t.predicate);
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      const std::string s = normalize_text(sentences[i]);
      if (s.find(subject) != std::string::npos && s.find(predicate) != std::string::npos) return i;
    }
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (normalize_text(sentences[i]).find(predicate) != std::string::npos) return i;
    }
    return 0;
  }

  ConversionReport& report_;
  std::set<std::string> used_ids_;
};

std::vector<json> records_of(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<json> records;
  if (path.ends_with(".jsonl")) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (collapse_whitespace(line).empty()) continue;
      records.push_back(json::parse(line));
    }
    return records;
  }
  json doc = json::parse(text);
  if (doc.is_array()) {
    records.assign(doc.begin(), doc.end());
  } else if (const json* data = find_any(doc, {"data", "pairs", "stories", "records"}); data && data->is_array()) {
    records.assign(data->begin(), data->end());
  } else if (doc.is_object()) {
    records.push_back(doc);
  }
  return records;
}

}  // namespace

ConversionResult convert_nir(const std::string& src_dir) {
  if (!fs::is_directory(src_dir)) throw ConversionError("'" + src_dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(src_dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (ext == ".json" || ext == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConversionError("no NIR files recognized in '" + src_dir + "' (0 recognized files)");

  ConversionResult result;
  Converter converter(result.report);
  for (const auto& file : files) {
    const std::string rel = fs::relative(file, src_dir).string();
    std::vector<json> records;
    try {
      records = records_of(file.string());
    } catch (const json::exception& e) {
      result.report.skipped.push_back({rel, "", std::string("unparsable: ") + e.what()});
      continue;
    }
    bool recognized = false;
    for (std::size_t i = 0; i < records.size(); ++i) {
      const std::string fallback = file.stem().string() + "-" + std::to_string(i);
      if (converter.convert_record(records[i], rel, fallback, result.corpus)) {
        recognized = true;
      } else {
        result.report.skipped.push_back({rel, fallback, "record is not a story pair"});
      }
    }
    if (recognized) result.report.recognized_files.push_back(rel);
  }
  if (result.report.recognized_files.empty()) {
    std::string listing;
    for (const auto& s : result.report.skipped) listing += "\n  " + s.file + ": " + s.reason;
    throw SchemaError("unrecognized NIR layout in '" + src_dir + "' (0 recognized files)" + listing);
  }
  auto& r = result.report;
  r.pair_count = result.corpus.size();
  for (const auto& p : result.corpus) {
    for (const Story* s : {&p.pre, &p.post}) {
      r.triple_count += s->triples.size();
      for (const auto& t : s->triples) {
        if (t.gold_label) {
          ++r.class_counts[index_of(*t.gold_label)];
        } else {
          ++r.unlabeled_triples;
        }
      }
    }
  }
  return result;
}

ConversionReport convert_nir(const std::string& src_dir, const std::string& dst_file) {
  auto result = convert_nir(src_dir);
  write_corpus(result.corpus, dst_file);
  return std::move(result.report);
}

}  // namespace ger
