#include "bailbench/experiments/runner.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "bailbench/common/date.hpp"
#include "bailbench/common/errors.hpp"
#include "bailbench/common/io.hpp"
#include "bailbench/common/text.hpp"

namespace bailbench {

namespace {

struct ItemOutcome {
  std::optional<Prediction> prediction;
  std::optional<ItemError> error;
  std::string prompt;
  Diagnostics diag;
};

ItemOutcome run_item(const ExperimentSetup& setup, const CaseRecord& record, const StatuteIndex* index,
                     Gateway* gateway, const RunOptions& options) {
  ItemOutcome out;
  const auto tag = std::string(to_string(setup.id)) + "/" + record.case_id;
  auto fail = [&](std::string msg) {
    out.error = ItemError{record.case_id, std::move(msg)};
    return std::move(out);
  };
  try {
    std::optional<ContextBlock> context;
    if (setup.with_statute_context) {
      context = assemble_context(record.statutes, *index, options.context_budget);
      if (context->omitted > 0) {
        out.diag.warn("experiments", record.case_id, "context",
                      std::to_string(context->omitted) + " cited sections left out by the context budget");
      }
    }
    out.prompt = build_prediction_prompt(record, context ? &*context : nullptr, options.prompt_budget);
  } catch (const ContextBudgetError& e) {
    return fail(e.what());
  }
  if (options.dry_run) return out;

  GenerationRequest req;
  req.prompt = out.prompt;
  req.max_new_tokens = options.max_new_tokens;
  req.temperature = options.temperature;
  req.want_logprobs = true;
  req.candidate_tokens = {"0", "1"};
  GenerationResult gen;
  try {
    gen = gateway->generate(setup.endpoint_id, req, tag);
  } catch (const GatewayError& e) {
    return fail(std::string("generation failed: ") + e.what());
  }
  auto parsed = parse_prediction(gen.text);
  if (!parsed) return fail(parsed.error());

  Prediction p;
  p.case_id = record.case_id;
  p.setup = setup.id;
  p.y_pred = parsed->label;
  p.rationale = parsed->rationale;
  p.bail_conditions = parsed->bail_conditions;
  if (gen.decision_logprobs && gen.decision_logprobs->count("0") && gen.decision_logprobs->count("1")) {
    p.confidence = confidence_from_logprobs(*gen.decision_logprobs);
  } else {
    out.diag.warn("experiments", record.case_id, "confidence", "backend returned no decision logprobs");
  }
  out.prediction = std::move(p);
  return out;
}

}  // namespace

SetupRun run_setup(const ExperimentSetup& setup, std::span<const CaseRecord> records, const StatuteIndex* index,
                   Gateway* gateway, const RunOptions& options, Diagnostics* diag) {
  if (setup.with_statute_context && !index) {
    throw ConfigError("setup " + std::string(to_string(setup.id)) + " needs a statute index");
  }
  if (!options.dry_run && !gateway) throw ConfigError("a gateway is required unless dry_run is set");
  if (!options.dry_run && !gateway->has_endpoint(setup.endpoint_id)) {
    throw ConfigError("endpoint '" + setup.endpoint_id + "' is not configured");
  }

  const auto started_at = utc_timestamp_now();
  std::vector<ItemOutcome> outcomes(records.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < records.size(); i = next++) {
      outcomes[i] = run_item(setup, records[i], index, gateway, options);
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, records.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
  }

  SetupRun run;
  run.setup = setup;
  run.records = records.size();
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return records[a].case_id < records[b].case_id; });
  for (auto i : order) {
    auto& o = outcomes[i];
    if (diag) diag->append(o.diag);
    run.prompts.push_back({records[i].case_id, std::move(o.prompt)});
    if (o.prediction) run.predictions.push_back(std::move(*o.prediction));
    if (o.error) {
      if (diag) diag->error("experiments", o.error->case_id, "", o.error->message);
      run.errors.push_back(std::move(*o.error));
    }
  }

  const double error_rate =
      records.empty() ? 0.0 : static_cast<double>(run.errors.size()) / static_cast<double>(records.size());
  run.failed = error_rate > options.max_item_error_rate;

  auto& m = run.manifest;
  m["schema"] = "bailbench.run_manifest/1";
  m["run_id"] = options.run_id;
  m["setup"] = to_string(setup.id);
  m["label"] = setup_label(setup.id);
  m["endpoint_id"] = setup.endpoint_id;
  m["with_statute_context"] = setup.with_statute_context;
  m["prompt_template"] = {{"id", "prediction_v1"}, {"sha256", prediction_template_hash()}};
  m["decoding"] = {{"max_new_tokens", options.max_new_tokens}, {"temperature", options.temperature}};
  m["context_budget"] = options.context_budget;
  m["prompt_budget"] = options.prompt_budget;
  m["dry_run"] = options.dry_run;
  m["records"] = records.size();
  m["predictions"] = run.predictions.size();
  m["item_errors"] = run.errors.size();
  m["error_rate"] = error_rate;
  m["max_item_error_rate"] = options.max_item_error_rate;
  m["status"] = run.failed ? "failed" : "ok";
  m["started_at"] = started_at;
  m["finished_at"] = utc_timestamp_now();
  return run;
}

void write_setup_run(const SetupRun& run, const std::filesystem::path& dir) {
  std::string preds, errors, prompts;
  for (const auto& p : run.predictions) preds += to_json(p).dump() + "\n";
  for (const auto& e : run.errors) {
    errors += nlohmann::ordered_json{{"case_id", e.case_id}, {"message", e.message}}.dump() + "\n";
  }
  for (const auto& p : run.prompts) {
    prompts += nlohmann::ordered_json{{"case_id", p.case_id}, {"prompt", p.prompt}}.dump() + "\n";
  }
  write_text_file(dir / "predictions.jsonl", preds);
  write_text_file(dir / "errors.jsonl", errors);
  write_text_file(dir / "prompts.jsonl", prompts);
  write_text_file(dir / "manifest.json", dump_pretty(run.manifest));
}

std::vector<Prediction> load_predictions(const std::filesystem::path& path) {
  std::vector<Prediction> out;
  for_each_line(path, [&](std::size_t line_no, std::string_view line) {
    if (text::trim(line).empty()) return;
    try {
      out.push_back(prediction_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  });
  return out;
}

}  // namespace bailbench
