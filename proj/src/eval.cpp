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

#include "ger/eval.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "ger/error.hpp"

namespace ger {

using nlohmann::json;

Labeling gold_labeling(const Corpus& corpus) {
  Labeling gold;
  for (const auto& instance : instances_of(corpus)) {
    if (instance.gold_label) gold[instance.key()] = *instance.gold_label;
  }
  return gold;
}

Labeling predicted_labeling(const std::vector<PipelinePrediction>& preds) {
  Labeling out;
  for (const auto& p : preds) {
    if (p.ok()) out[p.key] = p.final_event_type;
  }
  return out;
}

AlignedLabels align(const std::vector<PipelinePrediction>& preds, const Labeling& gold) {
  AlignedLabels a;
  std::set<InstanceKey> seen;
  for (const auto& p : preds) {
    auto it = gold.find(p.key);
    if (it == gold.end()) throw KeyMismatch("prediction " + p.key.to_string() + " has no gold label");
    if (!seen.insert(p.key).second) throw KeyMismatch("duplicate prediction for " + p.key.to_string());
    if (!p.ok()) {
      ++a.failed;
      continue;
    }
    a.predicted[p.key] = p.final_event_type;
    a.gold[p.key] = it->second;
  }
  for (const auto& [key, _] : gold) {
    if (!seen.contains(key)) throw KeyMismatch("gold instance " + key.to_string() + " has no prediction");
  }
  return a;
}

void ConfusionMatrix::add(EventType gold, EventType predicted) {
  ++counts[index_of(gold)][index_of(predicted)];
  ++total;
}

namespace {

void require_same_keys(const Labeling& a, const Labeling& b, const char* what) {
  if (a.size() != b.size()) throw KeyMismatch(std::string(what) + ": key sets differ in size");
  for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first) {
      throw KeyMismatch(std::string(what) + ": key " + ia->first.to_string() + " vs " + ib->first.to_string());
    }
  }
}

}  // namespace

ConfusionMatrix confusion(const Labeling& predicted, const Labeling& gold) {
  require_same_keys(predicted, gold, "confusion");
  ConfusionMatrix m;
  for (auto ip = predicted.begin(), ig = gold.begin(); ip != predicted.end(); ++ip, ++ig) m.add(ig->second, ip->second);
  return m;
}

ClassMetrics class_metrics(const ConfusionMatrix& m) {
  ClassMetrics out;
  for (EventType t : kAllEventTypes) {
    const std::size_t i = index_of(t);
    std::size_t gold_total = 0, predicted_total = 0;
    for (std::size_t j = 0; j < 5; ++j) {
      gold_total += m.counts[i][j];
      predicted_total += m.counts[j][i];
    }
    const double tp = static_cast<double>(m.counts[i][i]);
    ClassMetric& c = out.per_class[i];
    c.support = gold_total;
    if (gold_total > 0) c.recall = tp / static_cast<double>(gold_total);
    if (predicted_total > 0) c.precision = tp / static_cast<double>(predicted_total);
    if (c.recall && c.precision && *c.recall + *c.precision > 0.0) {
      c.f1 = 2.0 * *c.precision * *c.recall / (*c.precision + *c.recall);
    }
  }
  return out;
}

double chi_square_1dof_sf(double x) {
  if (x <= 0.0) return 1.0;
  return std::erfc(std::sqrt(x / 2.0));
}

McNemarResult mcnemar_from_counts(std::size_t b, std::size_t c, bool continuity_correction) {
  McNemarResult r;
  r.b = b;
  r.c = c;
  r.continuity_corrected = continuity_correction;
  if (b + c == 0) return r;
  double diff = std::abs(static_cast<double>(b) - static_cast<double>(c));
  if (continuity_correction) diff = std::max(diff - 1.0, 0.0);
  r.statistic = diff * diff / static_cast<double>(b + c);
  r.p_value = chi_square_1dof_sf(*r.statistic);
  return r;
}

McNemarResult mcnemar(const Labeling& preds_a, const Labeling& preds_b, const Labeling& gold,
                      bool continuity_correction) {
  require_same_keys(preds_a, gold, "mcnemar (A vs gold)");
  require_same_keys(preds_b, gold, "mcnemar (B vs gold)");
  std::size_t b = 0, c = 0;
  auto ia = preds_a.begin();
  auto ib = preds_b.begin();
  for (auto ig = gold.begin(); ig != gold.end(); ++ig, ++ia, ++ib) {
    const bool a_right = ia->second == ig->second;
    const bool b_right = ib->second == ig->second;
    if (a_right && !b_right) ++b;
    if (!a_right && b_right) ++c;
  }
  return mcnemar_from_counts(b, c, continuity_correction);
}

std::optional<double> ContributionRow::ratio(std::size_t part) const {
  if (count == 0) return std::nullopt;
  return static_cast<double>(part) / static_cast<double>(count);
}

ContributionReport contribution_analysis(const std::vector<PipelinePrediction>& preds, const Labeling& gold) {
  ContributionReport r;
  for (const auto& p : preds) {
    auto it = gold.find(p.key);
    if (it == gold.end()) throw KeyMismatch("prediction " + p.key.to_string() + " has no gold label");
    if (!p.ok()) continue;
    const RelevanceLabel truth = collapse_to_relevance(it->second);
    ContributionRow& row = r.per_class[index_of(it->second)];
    ++row.count;
    if (p.support_label != p.base_label) {
      ++row.alternative;
      if (p.final_relevance == truth) {
        ++row.corrected;
      } else {
        ++row.not_corrected;
      }
    } else if (p.base_label == truth) {
      ++row.success;
    } else {
      ++row.fail;
    }
  }
  return r;
}

ModelRow evaluate_model(std::string model, const std::vector<PipelinePrediction>& preds, const Labeling& gold) {
  AlignedLabels a = align(preds, gold);
  ModelRow row;
  row.model = std::move(model);
  row.confusion = confusion(a.predicted, a.gold);
  row.metrics = class_metrics(row.confusion);
  row.failed = a.failed;
  return row;
}

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

std::string fixed4(const std::optional<double>& v) {
  if (!v) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

std::string percent(const std::optional<double>& v) {
  if (!v) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", *v * 100.0);
  return buf;
}

void metric_table(std::ostringstream& out, const Report& report, const char* title,
                  std::optional<double> ClassMetric::*field) {
  out << "### " << title << "\n\n| Model | CST | INC | ADD | FGT | UFG |\n|---|---|---|---|---|---|\n";
  for (const auto& row : report.rows) {
    out << "| " << row.model;
    for (EventType t : kAllEventTypes) out << " | " << fixed4(row.metrics[t].*field);
    out << " |\n";
  }
  out << "\n";
}

}  // namespace

json report_to_json(const Report& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json metrics = json::object();
    for (EventType t : kAllEventTypes) {
      const auto& m = row.metrics[t];
      metrics[std::string(abbreviation(t))] = {{"recall", optional_json(m.recall)},
                                               {"precision", optional_json(m.precision)},
                                               {"f1", optional_json(m.f1)},
                                               {"support", m.support}};
    }
    json counts = json::array();
    for (const auto& r : row.confusion.counts) counts.push_back(r);
    rows.push_back({{"model", row.model},
                    {"metrics", metrics},
                    {"confusion", {{"counts", counts}, {"total", row.confusion.total}}},
                    {"failed", row.failed}});
  }
  json tests = json::array();
  for (const auto& e : report.mcnemar) {
    tests.push_back({{"model_a", e.model_a},
                     {"model_b", e.model_b},
                     {"scope", e.scope},
                     {"b", e.result.b},
                     {"c", e.result.c},
                     {"statistic", optional_json(e.result.statistic)},
                     {"p_value", optional_json(e.result.p_value)},
                     {"continuity_corrected", e.result.continuity_corrected}});
  }
  json out = {{"rows", rows}, {"mcnemar", tests}};
  if (report.contribution) {
    json contribution = json::object();
    for (EventType t : kAllEventTypes) {
      const auto& r = (*report.contribution)[t];
      contribution[std::string(to_string(t))] = {{"count", r.count},
                                                 {"fail", r.fail},
                                                 {"success", r.success},
                                                 {"alternative_insight", r.alternative},
                                                 {"corrected", r.corrected},
                                                 {"not_corrected", r.not_corrected},
                                                 {"fail_ratio", optional_json(r.ratio(r.fail))},
                                                 {"success_ratio", optional_json(r.ratio(r.success))},
                                                 {"alternative_ratio", optional_json(r.ratio(r.alternative))}};
    }
    out["contribution"] = contribution;
  }
  return out;
}

Report report_from_json(const json& j) {
  try {
    Report report;
    for (const auto& jr : j.at("rows")) {
      ModelRow row;
      row.model = jr.at("model").get<std::string>();
      for (EventType t : kAllEventTypes) {
        const auto& m = jr.at("metrics").at(std::string(abbreviation(t)));
        row.metrics.per_class[index_of(t)] = {optional_from(m.at("recall")), optional_from(m.at("precision")),
                                              optional_from(m.at("f1")), m.at("support").get<std::size_t>()};
      }
      const auto& counts = jr.at("confusion").at("counts");
      for (std::size_t g = 0; g < 5; ++g) {
        for (std::size_t p = 0; p < 5; ++p) row.confusion.counts[g][p] = counts.at(g).at(p).get<std::size_t>();
      }
      row.confusion.total = jr.at("confusion").at("total").get<std::size_t>();
      row.failed = jr.at("failed").get<std::size_t>();
      report.rows.push_back(std::move(row));
    }
    for (const auto& jt : j.at("mcnemar")) {
      McNemarEntry e;
      e.model_a = jt.at("model_a").get<std::string>();
      e.model_b = jt.at("model_b").get<std::string>();
      e.scope = jt.at("scope").get<std::string>();
      e.result.b = jt.at("b").get<std::size_t>();
      e.result.c = jt.at("c").get<std::size_t>();
      e.result.statistic = optional_from(jt.at("statistic"));
      e.result.p_value = optional_from(jt.at("p_value"));
      e.result.continuity_corrected = jt.at("continuity_corrected").get<bool>();
      report.mcnemar.push_back(std::move(e));
    }
    if (j.contains("contribution")) {
      ContributionReport c;
      for (EventType t : kAllEventTypes) {
        const auto& jc = j["contribution"].at(std::string(to_string(t)));
        c.per_class[index_of(t)] = {jc.at("count").get<std::size_t>(),
                                    jc.at("fail").get<std::size_t>(),
                                    jc.at("success").get<std::size_t>(),
                                    jc.at("alternative_insight").get<std::size_t>(),
                                    jc.at("corrected").get<std::size_t>(),
                                    jc.at("not_corrected").get<std::size_t>()};
      }
      report.contribution = c;
    }
    return report;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("report: ") + e.what());
  }
}

std::string emit_report(const Report& report, ReportFormat format) {
  if (format == ReportFormat::Json) return report_to_json(report).dump(2) + "\n";
  std::ostringstream out;
  metric_table(out, report, "Recall", &ClassMetric::recall);
  metric_table(out, report, "F1", &ClassMetric::f1);
  for (const auto& row : report.rows) {
    if (row.failed > 0) out << "_" << row.model << ": " << row.failed << " failed instances excluded._\n\n";
  }
  if (!report.mcnemar.empty()) {
    out << "### McNemar\n\n| A | B | Scope | b | c | Statistic | p |\n|---|---|---|---|---|---|---|\n";
    for (const auto& e : report.mcnemar) {
      out << "| " << e.model_a << " | " << e.model_b << " | " << e.scope << " | " << e.result.b << " | "
          << e.result.c << " | " << fixed4(e.result.statistic) << " | " << fixed4(e.result.p_value) << " |\n";
    }
    out << "\n";
  }
  if (report.contribution) {
    out << "### Support module contribution\n\n| | Fail | Success | Alternative Insight | Count |\n"
        << "|---|---|---|---|---|\n";
    for (EventType t : kAllEventTypes) {
      const auto& r = (*report.contribution)[t];
      out << "| " << to_string(t) << " | " << percent(r.ratio(r.fail)) << " | " << percent(r.ratio(r.success))
          << " | " << percent(r.ratio(r.alternative)) << " | " << r.count << " |\n";
    }
    out << "\n### Correction outcomes\n\n| | Fail | Success | Count |\n|---|---|---|---|\n";
    for (EventType t : kAllEventTypes) {
      const auto& r = (*report.contribution)[t];
      std::optional<double> fail, success;
      if (r.alternative > 0) {
        fail = static_cast<double>(r.not_corrected) / static_cast<double>(r.alternative);
        success = static_cast<double>(r.corrected) / static_cast<double>(r.alternative);
      }
      out << "| " << to_string(t) << " | " << percent(fail) << " | " << percent(success) << " | " << r.alternative
          << " |\n";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace ger
