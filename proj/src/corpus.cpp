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

#include "ger/corpus.hpp"

#include <cctype>
#include <set>

#include "ger/error.hpp"
#include "ger/text.hpp"

namespace ger {

using nlohmann::json;

const EventTriple* Story::find_triple(const std::string& triple_id) const {
  for (const auto& t : triples) {
    if (t.triple_id == triple_id) return &t;
  }
  return nullptr;
}

std::string InstanceKey::to_string() const {
  return pair_id + "/" + std::string(short_name(direction)) + "/" + triple_id;
}

namespace {

const json& require(const json& obj, const char* field, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  auto it = obj.find(field);
  if (it == obj.end()) throw SchemaError(where + ": missing field '" + field + "'");
  return *it;
}

std::string require_string(const json& obj, const char* field, const std::string& where) {
  const json& v = require(obj, field, where);
  if (!v.is_string()) throw SchemaError(where + ": field '" + field + "' must be a string");
  return v.get<std::string>();
}

std::size_t require_index(const json& obj, const char* field, const std::string& where) {
  const json& v = require(obj, field, where);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw SchemaError(where + ": field '" + field + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

EventTriple triple_from_json(const json& j, const std::string& where) {
  EventTriple t;
  t.triple_id = require_string(j, "triple_id", where);
  const std::string tw = where + " triple '" + t.triple_id + "'";
  t.subject = require_string(j, "subject", tw);
  t.predicate = require_string(j, "predicate", tw);
  if (auto it = j.find("object"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw SchemaError(tw + ": field 'object' must be a string or null");
    if (!collapse_whitespace(it->get<std::string>()).empty()) t.object = it->get<std::string>();
  }
  t.sentence_index = require_index(j, "sentence_index", tw);
  if (auto it = j.find("gold_label"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw SchemaError(tw + ": field 'gold_label' must be a string");
    t.gold_label = parse_event_type(it->get<std::string>());
    if (!t.gold_label) throw SchemaError(tw + ": unknown gold_label '" + it->get<std::string>() + "'");
  }
  return t;
}

std::optional<CorefMap> coref_from_json(const json& story, const std::string& where) {
  auto it = story.find("coref");
  if (it == story.end() || it->is_null()) return std::nullopt;
  if (!it->is_array()) throw SchemaError(where + ": 'coref' must be an array of clusters");
  CorefMap map;
  for (const auto& cluster : *it) {
    if (!cluster.is_array()) throw SchemaError(where + ": coref cluster must be an array");
    std::vector<CorefMention> mentions;
    for (const auto& m : cluster) {
      mentions.push_back({require_index(m, "sentence_index", where + " coref mention"),
                          require_string(m, "text", where + " coref mention")});
    }
    map.clusters.push_back(std::move(mentions));
  }
  return map;
}

Story story_from_json(const json& j, StoryRole role, const std::string& where) {
  Story s;
  s.role = role;
  s.story_id = require_string(j, "story_id", where);
  if (auto it = j.find("role"); it != j.end()) {
    if (!it->is_string() || it->get<std::string>() != to_string(role)) {
      throw SchemaError(where + ": role must be '" + std::string(to_string(role)) + "'");
    }
  }
  const json& sentences = require(j, "sentences", where);
  if (!sentences.is_array()) throw SchemaError(where + ": 'sentences' must be an array");
  for (const auto& sentence : sentences) {
    if (!sentence.is_string()) throw SchemaError(where + ": sentences must be strings");
    s.sentences.push_back(sentence.get<std::string>());
  }
  const json& triples = require(j, "triples", where);
  if (!triples.is_array()) throw SchemaError(where + ": 'triples' must be an array");
  for (const auto& t : triples) s.triples.push_back(triple_from_json(t, where));
  s.coref = coref_from_json(j, where);
  return s;
}

json story_to_json(const Story& s) {
  json triples = json::array();
  for (const auto& t : s.triples) {
    json jt = {{"triple_id", t.triple_id},
               {"subject", t.subject},
               {"predicate", t.predicate},
               {"object", t.object ? json(*t.object) : json(nullptr)},
               {"sentence_index", t.sentence_index}};
    if (t.gold_label) jt["gold_label"] = to_string(*t.gold_label);
    triples.push_back(std::move(jt));
  }
  json out = {{"story_id", s.story_id},
              {"role", to_string(s.role)},
              {"sentences", s.sentences},
              {"triples", std::move(triples)}};
  if (s.coref) {
    json clusters = json::array();
    for (const auto& cluster : s.coref->clusters) {
      json jc = json::array();
      for (const auto& m : cluster) jc.push_back({{"sentence_index", m.sentence_index}, {"text", m.text}});
      clusters.push_back(std::move(jc));
    }
    out["coref"] = std::move(clusters);
  }
  return out;
}

void validate_story(const std::string& pair_id, const Story& story, StoryRole expected) {
  const std::string side = expected == StoryRole::PreRetold ? "pre" : "post";
  if (story.role != expected) throw ValidationError(pair_id, side + ".role", "wrong story role");
  std::set<std::string> ids;
  for (const auto& t : story.triples) {
    const std::string field = side + ".triples[" + t.triple_id + "]";
    if (t.triple_id.empty()) throw ValidationError(pair_id, field, "empty triple_id");
    if (!ids.insert(t.triple_id).second) throw ValidationError(pair_id, field, "duplicate triple_id");
    if (collapse_whitespace(t.subject).empty()) throw ValidationError(pair_id, field + ".subject", "empty subject");
    if (collapse_whitespace(t.predicate).empty()) {
      throw ValidationError(pair_id, field + ".predicate", "empty predicate");
    }
    if (t.sentence_index >= story.sentences.size()) {
      throw ValidationError(pair_id, field + ".sentence_index",
                            "index " + std::to_string(t.sentence_index) + " out of range for " +
                                std::to_string(story.sentences.size()) + " sentences");
    }
    const Direction d = expected == StoryRole::PreRetold ? Direction::TargetIsPre : Direction::TargetIsPost;
    if (t.gold_label && !admissible(*t.gold_label, d)) {
      throw ValidationError(pair_id, field + ".gold_label",
                            std::string(to_string(*t.gold_label)) + " is not a valid label for a " + side +
                                "-story triple");
    }
  }
}

}  // namespace

void validate_pair(const StoryPair& pair) {
  if (pair.pair_id.empty()) throw ValidationError(pair.pair_id, "pair_id", "empty pair_id");
  validate_story(pair.pair_id, pair.pre, StoryRole::PreRetold);
  validate_story(pair.pair_id, pair.post, StoryRole::PostRetold);
}

Corpus corpus_from_json(const json& doc) {
  const json& version = require(doc, "schema_version", "corpus");
  if (!version.is_number_integer() || version.get<int>() != kCorpusSchemaVersion) {
    throw SchemaError("corpus: unsupported schema_version " + version.dump());
  }
  const json& pairs = require(doc, "pairs", "corpus");
  if (!pairs.is_array()) throw SchemaError("corpus: 'pairs' must be an array");
  Corpus corpus;
  std::set<std::string> seen;
  for (const auto& jp : pairs) {
    StoryPair p;
    p.pair_id = require_string(jp, "pair_id", "pair");
    const std::string where = "pair '" + p.pair_id + "'";
    p.pre = story_from_json(require(jp, "pre", where), StoryRole::PreRetold, where + " pre");
    p.post = story_from_json(require(jp, "post", where), StoryRole::PostRetold, where + " post");
    if (!seen.insert(p.pair_id).second) throw ValidationError(p.pair_id, "pair_id", "duplicate pair_id");
    validate_pair(p);
    corpus.push_back(std::move(p));
  }
  return corpus;
}

Corpus load_corpus(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw SchemaError("corpus '" + path + "': " + e.what());
  }
  return corpus_from_json(doc);
}

json corpus_to_json(const Corpus& corpus) {
  json pairs = json::array();
  for (const auto& p : corpus) {
    pairs.push_back({{"pair_id", p.pair_id}, {"pre", story_to_json(p.pre)}, {"post", story_to_json(p.post)}});
  }
  return {{"schema_version", kCorpusSchemaVersion}, {"pairs", std::move(pairs)}};
}

void write_corpus(const Corpus& corpus, const std::string& path) {
  write_file(path, corpus_to_json(corpus).dump(2) + "\n");
}

std::vector<QueryInstance> instances_of(const StoryPair& pair) {
  std::vector<QueryInstance> out;
  out.reserve(pair.pre.triples.size() + pair.post.triples.size());
  for (Direction d : {Direction::TargetIsPre, Direction::TargetIsPost}) {
    for (const auto& t : pair.target(d).triples) {
      out.push_back({pair.pair_id, t, render_query_sentence(t), &pair.reference(d), d, t.gold_label});
    }
  }
  return out;
}

std::vector<QueryInstance> instances_of(const Corpus& corpus) {
  std::vector<QueryInstance> out;
  for (const auto& p : corpus) {
    auto part = instances_of(p);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

std::string render_query_sentence(const EventTriple& triple) {
  std::string sentence = collapse_whitespace(triple.subject) + " " + collapse_whitespace(triple.predicate);
  if (triple.object) {
    std::string object = collapse_whitespace(*triple.object);
    if (!object.empty()) sentence += " " + object;
  }
  sentence = collapse_whitespace(sentence);
  if (!sentence.empty()) sentence[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(sentence[0])));
  sentence.push_back('.');
  return sentence;
}

std::array<std::size_t, 5> gold_class_counts(const Corpus& corpus) {
  std::array<std::size_t, 5> counts{};
  for (const auto& p : corpus) {
    for (const Story* s : {&p.pre, &p.post}) {
      for (const auto& t : s->triples) {
        if (t.gold_label) ++counts[index_of(*t.gold_label)];
      }
    }
  }
  return counts;
}

}  // namespace ger
