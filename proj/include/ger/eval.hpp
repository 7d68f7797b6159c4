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
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ger/corpus.hpp"
#include "ger/pipeline.hpp"
#include "ger/types.hpp"

namespace ger {

using Labeling = std::map<InstanceKey, EventType>;

// Gold event types of every labeled instance.
Labeling gold_labeling(const Corpus& corpus);

// Final event types of the predictions that did not fail.
Labeling predicted_labeling(const std::vector<PipelinePrediction>& preds);

// Predictions lined up with gold. Failed predictions are counted and
// dropped from both sides. Throws KeyMismatch when a prediction has no gold
// instance or a gold instance has no prediction.
struct AlignedLabels {
  Labeling predicted;
  Labeling gold;
  std::size_t failed = 0;
};
AlignedLabels align(const std::vector<PipelinePrediction>& preds, const Labeling& gold);

struct ConfusionMatrix {
  // counts[gold][predicted]
  std::array<std::array<std::size_t, 5>, 5> counts{};
  std::size_t total = 0;

  void add(EventType gold, EventType predicted);
  std::size_t at(EventType gold, EventType predicted) const { return counts[index_of(gold)][index_of(predicted)]; }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Throws KeyMismatch unless both labelings cover the same keys.
ConfusionMatrix confusion(const Labeling& predicted, const Labeling& gold);

struct ClassMetric {
  std::optional<double> recall;
  std::optional<double> precision;
  std::optional<double> f1;
  std::size_t support = 0;

  friend bool operator==(const ClassMetric&, const ClassMetric&) = default;
};

struct ClassMetrics {
  std::array<ClassMetric, 5> per_class{};

  const ClassMetric& operator[](EventType t) const { return per_class[index_of(t)]; }

  friend bool operator==(const ClassMetrics&, const ClassMetrics&) = default;
};

// Recall is undefined without gold support, precision without predictions,
// F1 when precision + recall is zero or either is undefined.
ClassMetrics class_metrics(const ConfusionMatrix& m);

struct McNemarResult {
  std::size_t b = 0;  // A correct, B wrong
  std::size_t c = 0;  // A wrong, B correct
  std::optional<double> statistic;
  std::optional<double> p_value;
  bool continuity_corrected = false;

  // No discordant pairs: the test is undefined.
  bool degenerate() const { return b + c == 0; }

  friend bool operator==(const McNemarResult&, const McNemarResult&) = default;
};

// Survival function of the chi-square distribution with one degree of
// freedom, erfc(sqrt(x / 2)).
double chi_square_1dof_sf(double x);

// (b - c)^2 / (b + c), or (max(|b - c| - 1, 0))^2 / (b + c) when corrected.
McNemarResult mcnemar_from_counts(std::size_t b, std::size_t c, bool continuity_correction = false);

// Throws KeyMismatch unless all three cover the same keys.
McNemarResult mcnemar(const Labeling& preds_a, const Labeling& preds_b, const Labeling& gold,
                      bool continuity_correction = false);

struct ContributionRow {
  std::size_t count = 0;
  std::size_t fail = 0;         // base and support both wrong
  std::size_t success = 0;      // base right and support agrees
  std::size_t alternative = 0;  // support disagrees with base
  // Among `alternative`: whether the final relevance came out right.
  std::size_t corrected = 0;
  std::size_t not_corrected = 0;

  std::optional<double> ratio(std::size_t part) const;

  friend bool operator==(const ContributionRow&, const ContributionRow&) = default;
};

struct ContributionReport {
  std::array<ContributionRow, 5> per_class{};

  const ContributionRow& operator[](EventType t) const { return per_class[index_of(t)]; }

  friend bool operator==(const ContributionReport&, const ContributionReport&) = default;
};

// Gold relevance comes from the gold event type. Failed predictions are
// skipped. Throws KeyMismatch for a prediction without gold.
ContributionReport contribution_analysis(const std::vector<PipelinePrediction>& preds, const Labeling& gold);

struct ModelRow {
  std::string model;
  ConfusionMatrix confusion;
  ClassMetrics metrics;
  std::size_t failed = 0;

  friend bool operator==(const ModelRow&, const ModelRow&) = default;
};

struct McNemarEntry {
  std::string model_a;
  std::string model_b;
  // "all" or an event type name when restricted to one gold class.
  std::string scope;
  McNemarResult result;

  friend bool operator==(const McNemarEntry&, const McNemarEntry&) = default;
};

struct Report {
  std::vector<ModelRow> rows;
  std::vector<McNemarEntry> mcnemar;
  std::optional<ContributionReport> contribution;

  friend bool operator==(const Report&, const Report&) = default;
};

ModelRow evaluate_model(std::string model, const std::vector<PipelinePrediction>& preds, const Labeling& gold);

enum class ReportFormat { Json, Markdown };

// Markdown uses the CST/INC/ADD/FGT/UFG columns with four decimals and
// "null" for undefined values; JSON keeps full precision.
std::string emit_report(const Report& report, ReportFormat format);
nlohmann::json report_to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

}  // namespace ger
