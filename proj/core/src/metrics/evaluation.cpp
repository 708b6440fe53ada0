#include "bailbench/metrics/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <thread>

#include "bailbench/common/errors.hpp"
#include "bailbench/common/io.hpp"
#include "bailbench/common/text.hpp"
#include "bailbench/metrics/lexical.hpp"
#include "bailbench/metrics/tokenize.hpp"

namespace bailbench {

namespace {

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::optional<double> read_optional(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

nlohmann::ordered_json to_json(const GenerationScores& s) {
  nlohmann::ordered_json j{{"rouge_l", s.rouge_l}, {"bleu", s.bleu}, {"meteor", s.meteor}};
  if (s.bertscore) {
    const auto& b = *s.bertscore;
    j["bertscore"] = {{"precision", b.rescaled.precision}, {"recall", b.rescaled.recall}, {"f1", b.rescaled.f1}};
    j["bertscore_raw"] = {{"precision", b.raw.precision}, {"recall", b.raw.recall}, {"f1", b.raw.f1}};
  } else {
    j["bertscore"] = nullptr;
    j["bertscore_raw"] = nullptr;
  }
  return j;
}

nlohmann::ordered_json to_json(const GenerationMeans& m) {
  return {{"items", m.items},
          {"rouge_l", m.rouge_l},
          {"bleu", m.bleu},
          {"meteor", m.meteor},
          {"bertscore_f1", optional_number(m.bertscore_f1)},
          {"bertscore_f1_raw", optional_number(m.bertscore_f1_raw)}};
}

GenerationMeans generation_means_from_json(const nlohmann::json& j) {
  GenerationMeans m;
  j.at("items").get_to(m.items);
  j.at("rouge_l").get_to(m.rouge_l);
  j.at("bleu").get_to(m.bleu);
  j.at("meteor").get_to(m.meteor);
  m.bertscore_f1 = read_optional(j, "bertscore_f1");
  m.bertscore_f1_raw = read_optional(j, "bertscore_f1_raw");
  return m;
}

ClassificationReport report_from_json(const nlohmann::json& j) {
  ClassificationReport r;
  r.mode = j.at("mode").get<std::string>() == "binary" ? Averaging::Binary : Averaging::Macro;
  j.at("accuracy").get_to(r.accuracy);
  j.at("precision").get_to(r.precision);
  j.at("recall").get_to(r.recall);
  j.at("f1").get_to(r.f1);
  const auto& c = j.at("confusion");
  c.at("tp").get_to(r.confusion.tp);
  c.at("fp").get_to(r.confusion.fp);
  c.at("tn").get_to(r.confusion.tn);
  c.at("fn").get_to(r.confusion.fn);
  return r;
}

GenerationScores score_pair(const std::string& candidate, const std::string& reference, const Embedder* embedder,
                            const std::optional<double>& baseline, Diagnostics& diag, const std::string& item) {
  const auto c = tokenize(candidate);
  const auto r = tokenize(reference);
  GenerationScores s;
  s.rouge_l = rouge_l(c, r, &diag, item);
  s.bleu = bleu(c, r);
  s.meteor = meteor(c, r);
  if (embedder) s.bertscore = bertscore(candidate, reference, *embedder, baseline);
  return s;
}

GenerationMeans mean_of(const std::vector<const GenerationScores*>& scores, bool with_bertscore) {
  GenerationMeans m;
  m.items = scores.size();
  if (scores.empty()) return m;
  double bs = 0.0, bs_raw = 0.0;
  for (const auto* s : scores) {
    m.rouge_l += s->rouge_l;
    m.bleu += s->bleu;
    m.meteor += s->meteor;
    if (s->bertscore) {
      bs += s->bertscore->rescaled.f1;
      bs_raw += s->bertscore->raw.f1;
    }
  }
  const auto n = static_cast<double>(scores.size());
  m.rouge_l /= n;
  m.bleu /= n;
  m.meteor /= n;
  if (with_bertscore) {
    m.bertscore_f1 = bs / n;
    m.bertscore_f1_raw = bs_raw / n;
  }
  return m;
}

std::string format4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  // Avoid "-0.0000" for tiny negatives.
  if (std::string_view(buf) == "-0.0000") return "0.0000";
  return buf;
}

}  // namespace

nlohmann::ordered_json to_json(const SetupSummary& s) {
  nlohmann::ordered_json j;
  j["schema"] = "bailbench.setup_summary/1";
  j["setup"] = to_string(s.setup);
  j["label"] = setup_label(s.setup);
  j["gold_items"] = s.gold_items;
  j["scored_items"] = s.scored_items;
  j["missing_predictions"] = s.missing_predictions;
  j["item_errors"] = s.item_errors;
  j["outcome"] = {{"macro", to_json(s.macro)}, {"binary", to_json(s.binary)}};
  j["reasoning"] = to_json(s.reasoning);
  j["conditions"] = to_json(s.conditions);
  j["geval"] = s.geval ? to_json(*s.geval) : nlohmann::ordered_json(nullptr);
  j["geval_failures"] = s.geval_failures;
  return j;
}

SetupSummary setup_summary_from_json(const nlohmann::json& j) {
  SetupSummary s;
  auto setup = parse_setup_id(j.at("setup").get<std::string>());
  if (!setup) throw std::invalid_argument("unknown setup in summary");
  s.setup = *setup;
  j.at("gold_items").get_to(s.gold_items);
  j.at("scored_items").get_to(s.scored_items);
  j.at("missing_predictions").get_to(s.missing_predictions);
  j.at("item_errors").get_to(s.item_errors);
  s.macro = report_from_json(j.at("outcome").at("macro"));
  s.binary = report_from_json(j.at("outcome").at("binary"));
  s.reasoning = generation_means_from_json(j.at("reasoning"));
  s.conditions = generation_means_from_json(j.at("conditions"));
  if (auto g = j.find("geval"); g != j.end() && !g->is_null()) {
    s.geval = GEvalMeans{g->at("factual_accuracy").get<double>(), g->at("completeness_coverage").get<double>(),
                         g->at("clarity_coherence").get<double>(), g->at("overall").get<double>()};
  }
  s.geval_failures = j.value("geval_failures", std::size_t{0});
  return s;
}

nlohmann::ordered_json to_json(const ItemScores& s) {
  nlohmann::ordered_json j;
  j["case_id"] = s.case_id;
  j["y_pred"] = s.y_pred;
  j["y_gold"] = s.y_gold;
  j["reasoning"] = s.reasoning ? to_json(*s.reasoning) : nlohmann::ordered_json(nullptr);
  j["conditions"] = s.conditions ? to_json(*s.conditions) : nlohmann::ordered_json(nullptr);
  j["error"] = s.error.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(s.error);
  return j;
}

SetupEvaluation evaluate_setup(SetupId setup, std::span<const Prediction> predictions,
                               std::span<const CaseRecord> golds, Gateway* gateway, const EvaluationOptions& options,
                               Diagnostics* diag) {
  const bool with_embeddings = !options.embedding_endpoint.empty();
  const bool with_judge = !options.judge_endpoint.empty();
  if ((with_embeddings || with_judge) && !gateway) {
    throw ConfigError("evaluation needs a gateway for embeddings or the judge");
  }

  std::map<std::string_view, const CaseRecord*> gold_by_id;
  for (const auto& g : golds) gold_by_id.emplace(g.case_id, &g);
  std::map<std::string_view, const Prediction*> pred_by_id;
  for (const auto& p : predictions) {
    if (!gold_by_id.count(p.case_id)) {
      if (diag) diag->warn("metrics", p.case_id, "", "prediction has no gold record; skipped");
      continue;
    }
    if (!pred_by_id.emplace(p.case_id, &p).second && diag) {
      diag->warn("metrics", p.case_id, "", "duplicate prediction; first one kept");
    }
  }

  SetupEvaluation out;
  auto& summary = out.summary;
  summary.setup = setup;
  summary.gold_items = golds.size();
  summary.missing_predictions = golds.size() - pred_by_id.size();

  struct Job {
    const Prediction* pred;
    const CaseRecord* gold;
  };
  std::vector<Job> jobs;
  for (const auto& [id, p] : pred_by_id) jobs.push_back({p, gold_by_id.at(id)});

  std::vector<ItemScores> items(jobs.size());
  std::vector<Diagnostics> diags(jobs.size());
  const auto setup_name = std::string(to_string(setup));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto& [pred, gold] = jobs[i];
      auto& item = items[i];
      item.case_id = pred->case_id;
      item.y_pred = pred->y_pred;
      Embedder embedder;
      if (with_embeddings) {
        embedder = [&, i](const std::vector<std::string>& texts) {
          return gateway->embed(options.embedding_endpoint, texts, "embed/" + setup_name + "/" + jobs[i].pred->case_id);
        };
      }
      const Embedder* emb = with_embeddings ? &embedder : nullptr;
      try {
        item.y_gold = map_outcome_to_binary(gold->outcome, gold->bail_type);
        if (!text::trim(gold->reasoning).empty()) {
          item.reasoning = score_pair(pred->rationale, gold->reasoning, emb, options.bertscore_baseline, diags[i],
                                      item.case_id);
        }
        if (gold->bail_conditions && !text::trim(*gold->bail_conditions).empty()) {
          // No ROUGE-L warning for an empty candidate here: "no conditions" is a legitimate answer.
          Diagnostics quiet;
          item.conditions =
              score_pair(pred->bail_conditions, *gold->bail_conditions, emb, options.bertscore_baseline, quiet,
                         item.case_id);
        }
      } catch (const std::exception& e) {
        item.reasoning.reset();
        item.conditions.reset();
        item.error = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::max<std::size_t>(1, std::min(options.jobs, jobs.size()));
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
  }

  std::vector<std::pair<int, int>> pairs;
  std::vector<const GenerationScores*> reasoning, conditions;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (diag) diag->append(diags[i]);
    const auto& it = items[i];
    if (!it.error.empty()) {
      ++summary.item_errors;
      if (diag) diag->error("metrics", it.case_id, "bertscore", it.error);
      continue;
    }
    pairs.emplace_back(it.y_pred, it.y_gold);
    if (it.reasoning) reasoning.push_back(&*it.reasoning);
    if (it.conditions) conditions.push_back(&*it.conditions);
  }
  summary.scored_items = pairs.size();
  if (!pairs.empty()) {
    summary.macro = classification_metrics(pairs, Averaging::Macro, diag);
    summary.binary = classification_metrics(pairs, Averaging::Binary, nullptr);
  } else if (diag) {
    diag->warn("metrics", setup_name, "", "no scored items; classification metrics left at 0");
  }
  summary.reasoning = mean_of(reasoning, with_embeddings);
  summary.conditions = mean_of(conditions, with_embeddings);

  if (with_judge) {
    std::vector<GEvalItem> judge_items;
    for (const auto& [pred, gold] : jobs) {
      if (text::trim(pred->rationale).empty() || text::trim(gold->reasoning).empty()) continue;
      std::string summary_text = gold->incident_details;
      if (text::trim(summary_text).empty()) summary_text = "Not provided.";
      judge_items.push_back({pred->case_id, pred->rationale, gold->reasoning, summary_text});
    }
    out.geval = geval_evaluate(judge_items, *gateway, options.judge_endpoint, options.jobs, diag, options.judge);
    summary.geval = out.geval->means;
    summary.geval_failures = out.geval->failures;
  }
  out.items = std::move(items);
  return out;
}

void write_setup_evaluation(const SetupEvaluation& e, const std::filesystem::path& dir) {
  write_text_file(dir / "summary.json", dump_pretty(to_json(e.summary)));
  std::string lines;
  for (const auto& it : e.items) lines += to_json(it).dump() + "\n";
  write_text_file(dir / "items.jsonl", lines);
  if (e.geval) {
    std::string g;
    for (const auto& it : e.geval->items) {
      nlohmann::ordered_json j;
      j["case_id"] = it.case_id;
      j["verdict"] = it.verdict ? nlohmann::ordered_json(to_json(*it.verdict)) : nlohmann::ordered_json(nullptr);
      j["error"] = it.verdict ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(it.error);
      g += j.dump() + "\n";
    }
    write_text_file(dir / "geval.jsonl", g);
  }
}

const std::array<std::string_view, kTableMetricColumns>& EvaluationTable::column_names() {
  static const std::array<std::string_view, kTableMetricColumns> names = {
      "outcome_accuracy",  "outcome_precision", "outcome_recall",      "outcome_f1",
      "reasoning_rouge_l", "reasoning_bleu",    "reasoning_meteor",    "reasoning_bertscore",
      "conditions_bleu",   "conditions_meteor", "conditions_bertscore"};
  return names;
}

std::string EvaluationTable::to_csv() const {
  std::string out = "setup,label";
  for (auto n : column_names()) {
    out += ',';
    out += n;
  }
  out += '\n';
  for (const auto& row : rows) {
    out += std::string(to_string(row.setup)) + "," + std::string(setup_label(row.setup));
    for (const auto& v : row.values) {
      out += ',';
      if (v) out += format4(*v);
    }
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json EvaluationTable::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "bailbench.evaluation_table/1";
  j["columns"] = nlohmann::ordered_json::array();
  for (auto n : column_names()) j["columns"].push_back(n);
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json r;
    r["setup"] = to_string(row.setup);
    r["label"] = setup_label(row.setup);
    for (std::size_t i = 0; i < kTableMetricColumns; ++i) r[std::string(column_names()[i])] = optional_number(row.values[i]);
    j["rows"].push_back(std::move(r));
  }
  return j;
}

std::string EvaluationTable::to_markdown() const {
  std::string out =
      "| Setup | Accuracy | Precision | Recall | F1-Score | ROUGE-L | BLEU | METEOR | BERTScore | BLEU | METEOR | "
      "BERTScore |\n|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& row : rows) {
    out += "| " + std::string(setup_label(row.setup));
    for (const auto& v : row.values) out += " | " + (v ? format4(*v) : std::string("-"));
    out += " |\n";
  }
  return out;
}

EvaluationTable assemble_table(std::span<const SetupSummary> summaries, Averaging mode) {
  std::map<SetupId, const SetupSummary*> by_setup;
  for (const auto& s : summaries) {
    if (!by_setup.emplace(s.setup, &s).second) {
      throw PreconditionError("setup " + std::string(to_string(s.setup)) + " appears twice");
    }
  }
  EvaluationTable table;
  for (auto id : kTableOrder) {
    auto it = by_setup.find(id);
    if (it == by_setup.end()) continue;
    const auto& s = *it->second;
    const auto& c = mode == Averaging::Macro ? s.macro : s.binary;
    TableRow row;
    row.setup = id;
    const bool scored = s.scored_items > 0;
    auto when = [](bool ok, double v) { return ok ? std::optional<double>(v) : std::nullopt; };
    row.values = {when(scored, c.accuracy),
                  when(scored, c.precision),
                  when(scored, c.recall),
                  when(scored, c.f1),
                  when(s.reasoning.items > 0, s.reasoning.rouge_l),
                  when(s.reasoning.items > 0, s.reasoning.bleu),
                  when(s.reasoning.items > 0, s.reasoning.meteor),
                  s.reasoning.items > 0 ? s.reasoning.bertscore_f1 : std::nullopt,
                  when(s.conditions.items > 0, s.conditions.bleu),
                  when(s.conditions.items > 0, s.conditions.meteor),
                  s.conditions.items > 0 ? s.conditions.bertscore_f1 : std::nullopt};
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace bailbench
