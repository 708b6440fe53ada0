#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

#include "bailbench/common/assets.hpp"
#include "bailbench/common/errors.hpp"
#include "bailbench/common/hash.hpp"
#include "bailbench/common/io.hpp"
#include "bailbench/common/template.hpp"
#include "bailbench/common/text.hpp"
#include "bailbench/corpus/corpus_io.hpp"
#include "bailbench/corpus/features.hpp"
#include "bailbench/corpus/stats.hpp"
#include "bailbench/experiments/runner.hpp"
#include "bailbench/extraction/cleaning.hpp"
#include "bailbench/extraction/output_parser.hpp"
#include "bailbench/extraction/prompt.hpp"
#include "bailbench/metrics/evaluation.hpp"
#include "bailbench/statutes/index.hpp"

namespace bailbench::cli {

namespace fs = std::filesystem;

Gateway& Context::gateway_for_run() {
  if (!gateway) {
    GatewayOptions options;
    options.run_id = run_id;
    options.cache_dir = config.cache_dir.empty() ? run_dir / "cache" : config.cache_dir;
    options.offline = config.offline;
    gateway = std::make_unique<Gateway>(config.endpoints, options);
  }
  return *gateway;
}

namespace {

template <class F>
void parallel_for(std::size_t n, std::size_t jobs, F&& fn) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) fn(i);
  };
  std::vector<std::jthread> pool;
  const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, n));
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
}

std::string require_role(const Context& ctx, std::string_view role) {
  auto id = ctx.config.role(role);
  if (!id) throw ConfigError("roles." + std::string(role) + " is not configured");
  return *id;
}

void write_gateway_log(Context& ctx) {
  if (ctx.gateway) ctx.gateway->write_log(ctx.run_dir / "logs" / (ctx.command + ".requests.jsonl"));
}

fs::path corpus_path(const Context& ctx) {
  return ctx.config.corpus_path.empty() ? ctx.stage_dir("clean") / "corpus.jsonl" : ctx.config.corpus_path;
}

std::vector<CaseRecord> load_records(Context& ctx) {
  const auto path = corpus_path(ctx);
  if (!fs::exists(path)) throw IoError("corpus not found at " + path.string() + " (run `clean` first)");
  auto load = load_corpus(path);
  for (const auto& e : load.errors) {
    ctx.diag.error("corpus", path.filename().string() + ":" + std::to_string(e.line), "", e.message);
  }
  return std::move(load.records);
}

nlohmann::ordered_json extracted_to_json(const ExtractedCase& e) {
  return {{"case", e.case_narrative},
          {"outcome", e.outcome_text},
          {"reasoning", e.reasoning_text},
          {"date_of_arrest", e.arrest_text},
          {"date_of_judgement", e.judgment_text}};
}

ExtractedCase extracted_from_json(const nlohmann::json& j) {
  ExtractedCase e;
  e.case_narrative = j.value("case", "");
  e.outcome_text = j.value("outcome", "");
  e.reasoning_text = j.value("reasoning", "");
  e.arrest_text = j.value("date_of_arrest", "");
  e.judgment_text = j.value("date_of_judgement", "");
  return e;
}

struct RawDocument {
  std::string case_id;
  std::string court;
  fs::path path;
};

std::vector<RawDocument> list_raw_documents(Context& ctx) {
  const auto& root = ctx.config.raw_dir;
  if (root.empty()) throw ConfigError("raw_dir is not configured");
  if (!fs::is_directory(root)) throw IoError("raw_dir " + root.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<RawDocument> docs;
  std::set<std::string> seen;
  for (const auto& f : files) {
    const auto rel = f.lexically_relative(root);
    RawDocument d;
    d.case_id = f.stem().string();
    d.court = rel.has_parent_path() ? rel.parent_path().generic_string() : ctx.config.default_court;
    d.path = f;
    if (!seen.insert(d.case_id).second) {
      ctx.diag.error("extraction", rel.generic_string(), "case_id", "duplicate case id; file skipped");
      continue;
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

std::vector<SetupId> setups_with_predictions(const Context& ctx) {
  std::vector<SetupId> out;
  for (auto id : kAllSetups) {
    if (fs::exists(ctx.stage_dir("predict") / to_string(id) / "predictions.jsonl")) out.push_back(id);
  }
  return out;
}

}  // namespace

int cmd_extract(Context& ctx) {
  const auto endpoint = require_role(ctx, "extraction");
  auto docs = list_raw_documents(ctx);
  auto& gateway = ctx.gateway_for_run();

  struct Outcome {
    std::optional<ExtractedCase> extracted;
    std::optional<ExtractionFailure> failure;
    std::string transport_error;
  };
  std::vector<Outcome> outcomes(docs.size());
  parallel_for(docs.size(), ctx.jobs, [&](std::size_t i) {
    auto& o = outcomes[i];
    std::string prompt;
    try {
      prompt = build_extraction_prompt(read_text_file(docs[i].path), ctx.config.extraction_budget);
    } catch (const ContextBudgetError& e) {
      o.failure = ExtractionFailure{DiscardReason::UnparseableOutput, e.what()};
      return;
    } catch (const PreconditionError& e) {
      o.failure = ExtractionFailure{DiscardReason::UnparseableOutput, e.what()};
      return;
    }
    GenerationRequest req;
    req.prompt = std::move(prompt);
    req.max_new_tokens = ctx.config.extraction_max_new_tokens;
    req.temperature = 0.0;
    try {
      auto reply = gateway.generate(endpoint, req, "extract/" + docs[i].case_id);
      auto parsed = parse_extraction_output(reply.text);
      if (parsed) {
        o.extracted = parsed.value();
      } else {
        o.failure = parsed.error();
      }
    } catch (const GatewayError& e) {
      o.transport_error = e.what();
    }
  });

  std::string extracted, failures;
  std::size_t ok = 0, failed = 0, transport = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto& d = docs[i];
    const auto& o = outcomes[i];
    if (o.extracted) {
      ++ok;
      nlohmann::ordered_json j{{"case_id", d.case_id}, {"court", d.court}, {"extracted", extracted_to_json(*o.extracted)}};
      extracted += j.dump() + "\n";
      continue;
    }
    nlohmann::ordered_json j{{"case_id", d.case_id}, {"court", d.court}};
    if (o.failure) {
      ++failed;
      j["reason"] = to_string(o.failure->reason);
      j["detail"] = o.failure->detail;
      ctx.diag.warn("extraction", d.case_id, "", std::string(to_string(o.failure->reason)) + ": " + o.failure->detail);
    } else {
      ++transport;
      j["reason"] = "TransportError";
      j["detail"] = o.transport_error;
      ctx.diag.error("extraction", d.case_id, "", o.transport_error);
    }
    failures += j.dump() + "\n";
  }
  const auto dir = ctx.stage_dir("extract");
  write_text_file(dir / "extracted.jsonl", extracted);
  write_text_file(dir / "failures.jsonl", failures);
  nlohmann::ordered_json manifest{{"schema", "bailbench.extract_manifest/1"},
                                  {"run_id", ctx.run_id},
                                  {"endpoint_id", endpoint},
                                  {"prompt_template", {{"id", "extraction_v1"}, {"sha256", extraction_template_hash()}}},
                                  {"documents", docs.size()},
                                  {"extracted", ok},
                                  {"unparseable", failed},
                                  {"transport_errors", transport}};
  write_text_file(dir / "manifest.json", dump_pretty(manifest));
  write_gateway_log(ctx);

  ctx.summary = {{"documents", docs.size()}, {"extracted", ok}, {"unparseable", failed}, {"transport_errors", transport}};
  if (!ctx.json) {
    *ctx.out << "extract: " << ok << " of " << docs.size() << " documents parsed, " << failed << " unparseable, "
             << transport << " transport errors\n";
  }
  const double rate = docs.empty() ? 0.0 : static_cast<double>(transport) / static_cast<double>(docs.size());
  return rate > ctx.config.max_item_error_rate ? 1 : 0;
}

int cmd_clean(Context& ctx) {
  const auto dir = ctx.stage_dir("extract");
  if (!fs::exists(dir / "extracted.jsonl")) throw IoError("no extraction output in " + dir.string() + " (run `extract` first)");

  std::map<std::string, std::size_t> counts;
  for (auto r : kAllDiscardReasons) counts[std::string(to_string(r))] = 0;
  std::string discards;
  auto discard = [&](const std::string& id, std::string_view reason, const std::string& detail, const char* stage) {
    ++counts[std::string(reason)];
    discards += nlohmann::ordered_json{{"case_id", id}, {"reason", reason}, {"detail", detail}, {"stage", stage}}.dump() + "\n";
  };

  if (fs::exists(dir / "failures.jsonl")) {
    for_each_line(dir / "failures.jsonl", [&](std::size_t, std::string_view line) {
      if (text::trim(line).empty()) return;
      auto j = nlohmann::json::parse(line);
      const auto reason = j.value("reason", "UnparseableOutput");
      if (reason == "TransportError") return;  // not a property of the document
      discard(j.at("case_id").get<std::string>(), reason, j.value("detail", ""), "extract");
    });
  }

  std::vector<CaseRecord> kept;
  for_each_line(dir / "extracted.jsonl", [&](std::size_t line_no, std::string_view line) {
    if (text::trim(line).empty()) return;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      ctx.diag.error("cleaning", "extracted.jsonl:" + std::to_string(line_no), "", e.what());
      return;
    }
    const auto id = j.value("case_id", "");
    auto candidate = assemble_candidate(id, j.value("court", ctx.config.default_court),
                                        extracted_from_json(j.value("extracted", nlohmann::json::object())), &ctx.diag);
    if (!candidate) {
      discard(id, to_string(candidate.error().reason), candidate.error().detail, "clean");
      return;
    }
    auto record = clean_filter(candidate.value(), &ctx.diag);
    if (!record) {
      discard(id, to_string(record.error()), "", "clean");
      return;
    }
    kept.push_back(record.value());
  });
  std::sort(kept.begin(), kept.end(), [](const CaseRecord& a, const CaseRecord& b) { return a.case_id < b.case_id; });

  const auto out_dir = ctx.stage_dir("clean");
  write_jsonl(out_dir / "corpus.jsonl", kept);
  write_text_file(out_dir / "discards.jsonl", discards);
  std::size_t discarded = 0;
  nlohmann::ordered_json by_reason;
  for (auto r : kAllDiscardReasons) {
    const auto n = counts[std::string(to_string(r))];
    by_reason[std::string(to_string(r))] = n;
    discarded += n;
  }
  nlohmann::ordered_json report{{"schema", "bailbench.discard_counts/1"},
                                {"kept", kept.size()},
                                {"discarded", discarded},
                                {"by_reason", by_reason}};
  write_text_file(out_dir / "discard_counts.json", dump_pretty(report));

  ctx.summary = report;
  if (!ctx.json) {
    *ctx.out << "clean: kept " << kept.size() << ", discarded " << discarded << "\n";
    for (const auto& [reason, n] : by_reason.items()) *ctx.out << "  " << reason << ": " << n.get<std::size_t>() << "\n";
  }
  return 0;
}

int cmd_stats(Context& ctx) {
  auto records = load_records(ctx);
  KeywordTable table = ctx.config.crime_keywords.empty() ? KeywordTable::builtin()
                                                          : KeywordTable::load(ctx.config.crime_keywords);
  LlmCrimeClassifier llm;
  if (auto id = ctx.config.role("crime_classifier")) {
    auto& gateway = ctx.gateway_for_run();
    llm = [&gateway, endpoint = *id](std::string_view incident) {
      GenerationRequest req;
      req.prompt = render_template(asset("prompts/crime_classifier_v1.txt"), {{"incident_details", std::string(incident)}});
      req.max_new_tokens = 16;
      return gateway.generate(endpoint, req, "crime/" + sha256_hex(incident).substr(0, 16)).text;
    };
  }
  const CrimeClassifier classifier(std::move(table), std::move(llm));

  std::vector<DerivedFeatures> features(records.size());
  std::vector<Diagnostics> diags(records.size());
  parallel_for(records.size(), ctx.jobs,
               [&](std::size_t i) { features[i] = derive_features(records[i], classifier, &diags[i]); });
  for (const auto& d : diags) ctx.diag.append(d);

  StatsOptions options;
  options.include_withdrawn = ctx.config.include_withdrawn;
  options.jobs = static_cast<unsigned>(ctx.jobs);
  const auto report = compute_stats(records, features, options);
  const auto dir = ctx.stage_dir("stats");
  emit_stats_json(report, dir / "stats.json");
  emit_stats_csv(report, dir);
  write_gateway_log(ctx);

  ctx.summary = {{"records", report.total_records},
                 {"overall_grant_rate", report.overall.rate},
                 {"withdrawn", report.withdrawn},
                 {"withdrawal_rate", report.withdrawal_rate}};
  if (!ctx.json) {
    *ctx.out << "stats: " << report.total_records << " records, overall grant rate " << report.overall.rate << "\n";
  }
  return 0;
}

int cmd_index_statutes(Context& ctx) {
  if (ctx.config.statutes_dir.empty()) throw ConfigError("statutes_dir is not configured");
  auto index = ingest_statutes(ctx.config.statutes_dir, &ctx.diag);
  const auto path = ctx.stage_dir("index") / "statute_index.json";
  index.save(path);
  ctx.summary = {{"sections", index.size()}, {"index", path.generic_string()}};
  if (!ctx.json) *ctx.out << "index-statutes: " << index.size() << " sections indexed\n";
  return 0;
}

int cmd_predict(Context& ctx, const PredictArgs& args) {
  std::vector<ExperimentSetup> setups;
  for (auto id : args.setups) setups.push_back(make_setup(id, ctx.config.roles));
  auto records = load_records(ctx);

  std::optional<StatuteIndex> index;
  const bool needs_index =
      std::any_of(setups.begin(), setups.end(), [](const ExperimentSetup& s) { return s.with_statute_context; });
  if (needs_index) {
    const auto saved = ctx.stage_dir("index") / "statute_index.json";
    if (fs::exists(saved)) {
      index = StatuteIndex::load(saved);
    } else if (!ctx.config.statutes_dir.empty()) {
      ctx.diag.warn("experiments", "", "index", "no saved statute index in this run; ingesting statutes_dir");
      index = ingest_statutes(ctx.config.statutes_dir, &ctx.diag);
    } else {
      throw ConfigError("context setups need statutes_dir or a prior `index-statutes` run");
    }
  }

  RunOptions options;
  options.run_id = ctx.run_id;
  options.jobs = ctx.jobs;
  options.context_budget = ctx.config.context_budget;
  options.prompt_budget = ctx.config.prompt_budget;
  options.max_new_tokens = ctx.config.max_new_tokens;
  options.temperature = ctx.config.temperature;
  options.max_item_error_rate = ctx.config.max_item_error_rate;
  options.dry_run = args.dry_run;
  Gateway* gateway = args.dry_run ? nullptr : &ctx.gateway_for_run();

  bool any_failed = false;
  nlohmann::ordered_json per_setup = nlohmann::ordered_json::object();
  for (const auto& setup : setups) {
    auto run = run_setup(setup, records, index ? &*index : nullptr, gateway, options, &ctx.diag);
    write_setup_run(run, ctx.stage_dir("predict") / to_string(setup.id));
    any_failed = any_failed || run.failed;
    per_setup[std::string(to_string(setup.id))] = {{"predictions", run.predictions.size()},
                                                    {"item_errors", run.errors.size()},
                                                    {"status", run.failed ? "failed" : "ok"}};
    if (!ctx.json) {
      *ctx.out << "predict " << to_string(setup.id) << " (" << setup_label(setup.id) << "): "
               << (args.dry_run ? run.prompts.size() : run.predictions.size())
               << (args.dry_run ? " prompts rendered" : " predictions") << ", " << run.errors.size() << " item errors"
               << (run.failed ? ", FAILED" : "") << "\n";
    }
  }
  write_gateway_log(ctx);
  ctx.summary = {{"records", records.size()}, {"dry_run", args.dry_run}, {"setups", per_setup}};
  return any_failed ? 1 : 0;
}

int cmd_evaluate(Context& ctx, const EvaluateArgs& args) {
  auto setups = args.setups.empty() ? setups_with_predictions(ctx) : args.setups;
  if (setups.empty()) throw IoError("no predictions found under " + ctx.stage_dir("predict").string());
  auto golds = load_records(ctx);

  EvaluationOptions options;
  options.embedding_endpoint = ctx.config.role("embedder").value_or("");
  options.judge_endpoint = ctx.config.role("judge").value_or("");
  options.bertscore_baseline = ctx.config.bertscore_baseline;
  options.jobs = ctx.jobs;
  Gateway* gateway = options.embedding_endpoint.empty() && options.judge_endpoint.empty() ? nullptr
                                                                                           : &ctx.gateway_for_run();
  if (options.embedding_endpoint.empty()) {
    ctx.diag.warn("metrics", "", "bertscore", "roles.embedder is not configured; BERTScore columns stay empty");
  }

  nlohmann::ordered_json per_setup = nlohmann::ordered_json::object();
  for (auto id : setups) {
    const auto path = ctx.stage_dir("predict") / to_string(id) / "predictions.jsonl";
    if (!fs::exists(path)) throw IoError("no predictions for " + std::string(to_string(id)) + " at " + path.string());
    const auto predictions = load_predictions(path);
    auto eval = evaluate_setup(id, predictions, golds, gateway, options, &ctx.diag);
    write_setup_evaluation(eval, ctx.stage_dir("evaluate") / to_string(id));
    const auto& s = eval.summary;
    per_setup[std::string(to_string(id))] = {{"scored_items", s.scored_items},
                                              {"accuracy", s.macro.accuracy},
                                              {"item_errors", s.item_errors}};
    if (!ctx.json) {
      *ctx.out << "evaluate " << to_string(id) << ": " << s.scored_items << " scored, accuracy " << s.macro.accuracy
               << "\n";
    }
  }
  write_gateway_log(ctx);
  ctx.summary = {{"setups", per_setup}};
  return 0;
}

int cmd_report(Context& ctx) {
  std::vector<SetupSummary> summaries;
  for (auto id : kAllSetups) {
    const auto path = ctx.stage_dir("evaluate") / to_string(id) / "summary.json";
    if (!fs::exists(path)) continue;
    summaries.push_back(setup_summary_from_json(nlohmann::json::parse(read_text_file(path))));
  }
  if (summaries.empty()) throw IoError("no evaluation summaries under " + ctx.stage_dir("evaluate").string());

  const auto other = ctx.config.averaging == Averaging::Macro ? Averaging::Binary : Averaging::Macro;
  const auto table = assemble_table(summaries, ctx.config.averaging);
  const auto alt = assemble_table(summaries, other);
  const auto dir = ctx.stage_dir("report");
  write_text_file(dir / "table.csv", table.to_csv());
  write_text_file(dir / "table.json", dump_pretty(table.to_json()));
  write_text_file(dir / "table.md", table.to_markdown());
  write_text_file(dir / ("table_" + std::string(to_string(other)) + ".csv"), alt.to_csv());

  std::string geval = "setup,label,factual_accuracy,completeness_coverage,clarity_coherence,overall,failures\n";
  for (auto id : kTableOrder) {
    auto it = std::find_if(summaries.begin(), summaries.end(), [&](const SetupSummary& s) { return s.setup == id; });
    if (it == summaries.end() || !it->geval) continue;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.4f,%.4f,%.4f,%.4f,%zu", it->geval->factual_accuracy,
                  it->geval->completeness_coverage, it->geval->clarity_coherence, it->geval->overall,
                  it->geval_failures);
    geval += std::string(to_string(id)) + "," + std::string(setup_label(id)) + "," + buf + "\n";
  }
  write_text_file(dir / "geval.csv", geval);

  ctx.summary = {{"rows", table.rows.size()}, {"averaging", to_string(ctx.config.averaging)},
                 {"table", (dir / "table.csv").generic_string()}};
  if (!ctx.json) *ctx.out << table.to_markdown();
  return 0;
}

}  // namespace bailbench::cli
