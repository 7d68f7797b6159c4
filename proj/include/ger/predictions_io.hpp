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

#include <string>
#include <vector>

#include "json.hpp"
#include "ger/pipeline.hpp"

namespace ger {

// JSON-lines form of a prediction. Support sets are written as sorted
// triple ids. Prompts and raw replies are included only with `full_trace`.
nlohmann::json prediction_to_json(const PipelinePrediction& p, bool full_trace = false);

// Inverse of prediction_to_json. Support keys carry only the triple id
// since the slot texts are not serialized. Throws SchemaError.
PipelinePrediction prediction_from_json(const nlohmann::json& j);

std::string predictions_to_jsonl(const std::vector<PipelinePrediction>& preds, bool full_trace = false);
void write_predictions(const std::string& path, const std::vector<PipelinePrediction>& preds,
                       bool full_trace = false);
std::vector<PipelinePrediction> read_predictions(const std::string& path);

}  // namespace ger
