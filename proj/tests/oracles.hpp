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

// Independent reference computations used by the unit tests and the
// acceptance binary. None of them call into the library code they check.

#include <array>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ger/corpus.hpp"
#include "ger/retrieval.hpp"
#include "ger/types.hpp"

namespace ger::testing {

// A synthetic reference story with planted vectors for every surface.
struct RetrievalScenario {
  Story story;
  std::map<std::string, std::vector<double>> vectors;  // normalized surface -> raw vector
  std::vector<double> query;
  RetrievalConfig cfg;
};

inline constexpr std::size_t kScenarioDim = 6;

RetrievalScenario random_retrieval_scenario(std::mt19937_64& rng, std::size_t max_triples = 8);

struct RetrievalOracle {
  std::set<std::string> selected;
  // Whether every selected triple has a node at or above the node threshold.
  bool shortcut_safe = true;
};

// Scores every triple directly from the planted vectors.
RetrievalOracle brute_force_retrieval(const RetrievalScenario& sc);

// The library path: KG construction plus support_events_kg.
std::set<std::string> run_retrieval(const RetrievalScenario& sc);

struct OracleMetric {
  std::optional<double> recall;
  std::optional<double> precision;
  std::optional<double> f1;
};

// Per-class metrics recounted from (gold, predicted) pairs, indexed by
// EventType.
std::array<OracleMetric, 5> recount_metrics(const std::vector<std::pair<EventType, EventType>>& gold_predicted);

// Chi-square survival function with one degree of freedom by composite
// Simpson integration of the density (after substituting t = u^2).
double simpson_chi2_sf(double x, int intervals = 20000);

}  // namespace ger::testing
