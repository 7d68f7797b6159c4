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

#include "ger/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "ger/config.hpp"
#include "ger/corpus.hpp"
#include "ger/error.hpp"
#include "ger/eval.hpp"
#include "ger/graph.hpp"
#include "ger/manifest.hpp"
#include "ger/nir.hpp"
#include "ger/pipeline.hpp"
#include "ger/predictions_io.hpp"
#include "ger/retrieval.hpp"
#include "ger/runtime.hpp"
#include "ger/text.hpp"

namespace ger {

using nlohmann::json;

namespace {

void report_error(std::ostream& err, std::string_view kind, std::string_view message, int code) {
  err << json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump() << "\n";
}

const StoryPair& find_pair(const Corpus& corpus, const std::string& pair_id) {
  for (const auto& p : corpus) {
    if (p.pair_id == pair_id) return p;
  }
  throw ValidationError(pair_id, "pair_id", "no such pair in corpus");
}

Direction direction_from_story(const std::string& story) {
  auto d = parse_direction(story);
  if (!d) throw ConfigError("--story must be pre or post: " + story);
  return *d;
}

ReportFormat parse_format(const std::string& s) {
  if (s == "md" || s == "markdown") return ReportFormat::Markdown;
  if (s == "json") return ReportFormat::Json;
  throw ConfigError("--format must be md or json: " + s);
}

std::string model_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

struct RunOutcome {
  std::vector<PipelinePrediction> predictions;
  std::vector<ProviderInfo> providers;
  std::string catalog_hash;
};

RunOutcome run_once(const Corpus& corpus, const Config& config, const std::string& call_log,
                    const std::optional<RetrievalConfig>& retrieval) {
  Runtime rt(config, call_log);
  if (retrieval) rt.set_retrieval(*retrieval);
  GerPipeline pipeline(rt.modules());
  return {pipeline.run(corpus), rt.providers(), rt.catalog().hash()};
}

int cmd_convert(const std::string& src, const std::string& dst, std::ostream& out) {
  const ConversionReport report = convert_nir(src, dst);
  out << report.to_json().dump(2) << "\n";
  return kExitOk;
}

int cmd_build_kg(const std::string& corpus_path, const std::string& pair_id, const std::string& story,
                 const std::string& out_path, std::ostream& out) {
  const Corpus corpus = load_corpus(corpus_path);
  const StoryPair& pair = find_pair(corpus, pair_id);
  const Direction d = direction_from_story(story);
  // --story names the story the graph is built from.
  const Story& s = target_role(d) == StoryRole::PreRetold ? pair.pre : pair.post;
  const std::string text = build_kg(s).to_json().dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
  }
  return kExitOk;
}

struct RetrieveArgs {
  std::string corpus, pair, triple, story, config;
  std::optional<double> tau_node, tau_triple;
  std::string agg;
};

int cmd_retrieve(const RetrieveArgs& a, std::ostream& out) {
  const Config config = a.config.empty() ? Config{} : Config::load(a.config);
  RetrievalConfig rc = retrieval_config(config);
  if (a.tau_node) rc.node_threshold = *a.tau_node;
  if (a.tau_triple) rc.triple_threshold = *a.tau_triple;
  if (!a.agg.empty()) {
    auto agg = parse_aggregation(a.agg);
    if (!agg) throw ConfigError("--agg must be mean, min or geo: " + a.agg);
    rc.aggregation = *agg;
  }
  rc.validate();

  const Corpus corpus = load_corpus(a.corpus);
  const StoryPair& pair = find_pair(corpus, a.pair);
  const Direction d = direction_from_story(a.story);
  const Story& target = pair.target(d);
  const EventTriple* query = target.find_triple(a.triple);
  if (!query) throw ValidationError(pair.pair_id, "triple_id", "no triple '" + a.triple + "' in " + a.story + " story");
  const PersonalKg kg = build_kg(pair.reference(d));
  EmbedderStack embedder = make_embedder(config);
  const std::string query_text = render_query_sentence(*query);
  const RetrievalTrace trace = retrieve_support(kg, query_text, *embedder.get(), rc);
  json doc = trace.to_json(kg);
  doc["query"] = query_text;
  doc["reference_story"] = pair.reference(d).story_id;
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_run(const std::string& corpus_path, const std::string& config_path, const std::string& out_path,
            bool trace_full, const std::string& call_log, std::ostream& err) {
  const Config config = Config::load(config_path);
  const std::string corpus_bytes = read_file(corpus_path);
  const Corpus corpus = load_corpus(corpus_path);

  RunManifest m;
  m.started_at = utc_timestamp();
  RunOutcome r = run_once(corpus, config, call_log, std::nullopt);
  const std::string text = predictions_to_jsonl(r.predictions, trace_full);
  write_file(out_path, text);
  m.finished_at = utc_timestamp();

  m.config_dir = config.base_dir();
  m.config_snapshot = config.serialize();
  m.prompt_catalog_hash = r.catalog_hash;
  m.corpus_path = corpus_path;
  m.corpus_hash = sha256_hex(corpus_bytes);
  m.predictions_hash = sha256_hex(text);
  m.providers = r.providers;
  m.instances = r.predictions.size();
  m.failed = static_cast<std::size_t>(
      std::count_if(r.predictions.begin(), r.predictions.end(), [](const auto& p) { return !p.ok(); }));
  write_manifest(manifest_path_for(out_path), m);
  err << "run: " << m.instances << " instances, " << m.failed << " failed -> " << out_path << "\n";
  return kExitOk;
}

Labeling restrict(const Labeling& l, const std::set<InstanceKey>& keys) {
  Labeling out;
  for (const auto& [k, v] : l) {
    if (keys.contains(k)) out.emplace(k, v);
  }
  return out;
}

void add_mcnemar(Report& report, const std::string& name_a, const std::vector<PipelinePrediction>& a,
                 const std::string& name_b, const std::vector<PipelinePrediction>& b, const Labeling& gold,
                 bool continuity) {
  const Labeling la = predicted_labeling(a);
  const Labeling lb = predicted_labeling(b);
  std::set<InstanceKey> common;
  for (const auto& [k, _] : la) {
    if (lb.contains(k) && gold.contains(k)) common.insert(k);
  }
  auto entry = [&](const std::string& scope, const std::set<InstanceKey>& keys) {
    report.mcnemar.push_back(
        {name_a, name_b, scope, mcnemar(restrict(la, keys), restrict(lb, keys), restrict(gold, keys), continuity)});
  };
  entry("all", common);
  for (EventType t : kAllEventTypes) {
    std::set<InstanceKey> keys;
    for (const auto& k : common) {
      if (gold.at(k) == t) keys.insert(k);
    }
    if (!keys.empty()) entry(std::string(abbreviation(t)), keys);
  }
}

struct EvaluateArgs {
  std::string pred, pred_b, gold, format = "md", name_a, name_b;
  bool mcnemar = false, continuity = false, contribution = false, verify = false;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  const ReportFormat format = parse_format(a.format);
  if (a.mcnemar && a.pred_b.empty()) throw ConfigError("--mcnemar needs --pred-b");
  if (a.verify) {
    for (const std::string& p : {a.pred, a.pred_b}) {
      if (p.empty()) continue;
      const VerifyResult v = verify_manifest(read_manifest(manifest_path_for(p)), p, a.gold);
      if (!v.ok()) {
        std::string msg = p + ": manifest verification failed:";
        for (const auto& m : v.mismatches) msg += " " + m + ";";
        throw PipelineError(msg);
      }
      err << "verify: " << p << " matches its manifest\n";
    }
  }
  const Labeling gold = gold_labeling(load_corpus(a.gold));
  const auto preds_a = read_predictions(a.pred);
  Report report;
  const std::string name_a = a.name_a.empty() ? model_name(a.pred) : a.name_a;
  report.rows.push_back(evaluate_model(name_a, preds_a, gold));
  if (!a.pred_b.empty()) {
    const auto preds_b = read_predictions(a.pred_b);
    const std::string name_b = a.name_b.empty() ? model_name(a.pred_b) : a.name_b;
    report.rows.push_back(evaluate_model(name_b, preds_b, gold));
    if (a.mcnemar) add_mcnemar(report, name_a, preds_a, name_b, preds_b, gold, a.continuity);
  }
  if (a.contribution) report.contribution = contribution_analysis(preds_a, gold);
  out << emit_report(report, format);
  return kExitOk;
}

struct SweepArgs {
  std::string corpus, config, tau_node, tau_triple, format = "md";
};

std::string fmt_threshold(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const ReportFormat format = parse_format(a.format);
  const Config config = Config::load(a.config);
  const RetrievalConfig base = retrieval_config(config);
  const std::vector<double> nodes =
      a.tau_node.empty() ? std::vector<double>{base.node_threshold} : parse_sweep_range(a.tau_node);
  const std::vector<double> triples =
      a.tau_triple.empty() ? std::vector<double>{base.triple_threshold} : parse_sweep_range(a.tau_triple);
  const Corpus corpus = load_corpus(a.corpus);
  const Labeling gold = gold_labeling(corpus);

  Report report;
  for (double tn : nodes) {
    for (double tt : triples) {
      RetrievalConfig rc = base;
      rc.node_threshold = tn;
      rc.triple_threshold = tt;
      const RunOutcome r = run_once(corpus, config, {}, rc);
      const std::string name = "tau_node=" + fmt_threshold(tn) + " tau_triple=" + fmt_threshold(tt);
      report.rows.push_back(evaluate_model(name, r.predictions, gold));
      err << "sweep: " << name << " done\n";
    }
  }
  out << emit_report(report, format);
  return kExitOk;
}

}  // namespace

std::vector<double> parse_sweep_range(const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon == std::string::npos ? std::string::npos : colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  std::vector<double> nums;
  for (const auto& p : parts) {
    try {
      std::size_t used = 0;
      nums.push_back(std::stod(p, &used));
      if (used != p.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      throw ConfigError("bad sweep range '" + spec + "'");
    }
  }
  if (nums.size() == 1) return nums;
  if (nums.size() != 3) throw ConfigError("sweep range must be start:stop:step: " + spec);
  const double lo = nums[0], hi = nums[1], step = nums[2];
  if (!(step > 0.0) || hi < lo) throw ConfigError("sweep range needs step > 0 and stop >= start: " + spec);
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (n > 10000) throw ConfigError("sweep range has too many values: " + spec);
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e9) / 1e9);
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph-empowered refinement for personal event classification", "ger"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kArtifactVersion);

  std::string src, dst;
  auto* convert = app.add_subcommand("convert-nir", "Convert NIR release files to the corpus schema");
  convert->add_option("--src", src, "Directory with the NIR files")->required();
  convert->add_option("--dst", dst, "Output corpus JSON")->required();

  std::string kg_corpus, kg_pair, kg_story, kg_out;
  auto* build = app.add_subcommand("build-kg", "Print the personal knowledge graph of one story");
  build->add_option("--corpus", kg_corpus)->required();
  build->add_option("--pair", kg_pair)->required();
  build->add_option("--story", kg_story, "pre or post")->required();
  build->add_option("--out", kg_out, "Write to a file instead of stdout");

  RetrieveArgs ra;
  auto* retrieve = app.add_subcommand("retrieve", "Show KG support retrieval for one query triple");
  retrieve->add_option("--corpus", ra.corpus)->required();
  retrieve->add_option("--pair", ra.pair)->required();
  retrieve->add_option("--triple", ra.triple)->required();
  retrieve->add_option("--story", ra.story, "Story holding the query triple (pre or post)")->required();
  retrieve->add_option("--config", ra.config);
  retrieve->add_option("--tau-node", ra.tau_node);
  retrieve->add_option("--tau-triple", ra.tau_triple);
  retrieve->add_option("--agg", ra.agg, "mean, min or geo");

  std::string run_corpus, run_config, run_out, run_log;
  bool trace_full = false;
  auto* run = app.add_subcommand("run", "Classify every instance of a corpus");
  run->add_option("--corpus", run_corpus)->required();
  run->add_option("--config", run_config)->required();
  run->add_option("--out", run_out, "Predictions JSON lines")->required();
  run->add_flag("--trace-full", trace_full, "Keep raw prompts and responses in the trace");
  run->add_option("--call-log", run_log, "Timestamped log of provider exchanges");

  EvaluateArgs ea;
  auto* evaluate = app.add_subcommand("evaluate", "Score predictions against gold labels");
  evaluate->add_option("--pred", ea.pred)->required();
  evaluate->add_option("--pred-b", ea.pred_b);
  evaluate->add_option("--gold", ea.gold, "Corpus with gold labels")->required();
  evaluate->add_option("--format", ea.format, "md or json");
  evaluate->add_option("--name-a", ea.name_a);
  evaluate->add_option("--name-b", ea.name_b);
  evaluate->add_flag("--mcnemar", ea.mcnemar);
  evaluate->add_flag("--continuity", ea.continuity, "Continuity-corrected McNemar statistic");
  evaluate->add_flag("--contribution", ea.contribution, "Fail / Success / Alternative Insight breakdown");
  evaluate->add_flag("--verify", ea.verify, "Check the run manifest hashes first");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Run over a grid of retrieval thresholds");
  sweep->add_option("--corpus", sa.corpus)->required();
  sweep->add_option("--config", sa.config)->required();
  sweep->add_option("--tau-node", sa.tau_node, "start:stop:step");
  sweep->add_option("--tau-triple", sa.tau_triple, "start:stop:step");
  sweep->add_option("--format", sa.format, "md or json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what(), kExitUsage);
    return kExitUsage;
  }

  try {
    if (*convert) return cmd_convert(src, dst, out);
    if (*build) return cmd_build_kg(kg_corpus, kg_pair, kg_story, kg_out, out);
    if (*retrieve) return cmd_retrieve(ra, out);
    if (*run) return cmd_run(run_corpus, run_config, run_out, trace_full, run_log, err);
    if (*evaluate) return cmd_evaluate(ea, out, err);
    if (*sweep) return cmd_sweep(sa, out, err);
  } catch (const ConfigError& e) {
    report_error(err, "config", e.what(), kExitConfig);
    return kExitConfig;
  } catch (const std::exception& e) {
    report_error(err, "runtime", e.what(), kExitRuntime);
    return kExitRuntime;
  }
  report_error(err, "usage", "no subcommand", kExitUsage);
  return kExitUsage;
}

}  // namespace ger
