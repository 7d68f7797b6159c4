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

#include <stdexcept>
#include <string>

namespace ger {

// Root of every error raised by the library. Callers that only need a
// message can catch this; the subclasses exist so that tests and the CLI
// can tell failure classes apart.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed document: bad JSON, wrong type, missing required field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Well-formed document that breaks a domain invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::string pair_id, std::string field, const std::string& detail)
      : Error("pair '" + pair_id + "', " + field + ": " + detail),
        pair_id_(std::move(pair_id)),
        field_(std::move(field)) {}

  const std::string& pair_id() const { return pair_id_; }
  const std::string& field() const { return field_; }

 private:
  std::string pair_id_;
  std::string field_;
};

class ConversionError : public Error {
 public:
  using Error::Error;
};

class CorefError : public Error {
 public:
  using Error::Error;
};

class UnknownNode : public Error {
 public:
  explicit UnknownNode(const std::string& node_id) : Error("unknown node id '" + node_id + "'") {}
};

class EmptyText : public Error {
 public:
  EmptyText() : Error("text is empty after normalization") {}
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t a, std::size_t b)
      : Error("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

// Remote call failed after the retry budget, or a provider refused a request.
class ProviderError : public Error {
 public:
  using Error::Error;
};

// A scripted mock received a prompt it has no response for.
class ScriptError : public Error {
 public:
  using Error::Error;
};

class TemplateError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class MissingPrediction : public Error {
 public:
  using Error::Error;
};

class PipelineError : public Error {
 public:
  using Error::Error;
};

class KeyMismatch : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ger
