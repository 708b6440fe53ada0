#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bailbench/common/diagnostics.hpp"
#include "bailbench/corpus/case_record.hpp"
#include "bailbench/experiments/prediction.hpp"
#include "bailbench/experiments/setup.hpp"
#include "bailbench/gateway/gateway.hpp"
#include "bailbench/metrics/bertscore.hpp"
#include "bailbench/metrics/classification.hpp"
#include "bailbench/metrics/geval.hpp"

namespace bailbench {

struct GenerationScores {
  double rouge_l = 0.0;
  double bleu = 0.0;
  double meteor = 0.0;
  std::optional<BertScoreResult> bertscore;  // empty when no embedder is configured
};

struct EvaluationOptions {
  std::string embedding_endpoint;  // empty: BERTScore columns stay blank
  std::optional<double> bertscore_baseline;
  std::string judge_endpoint;  // empty: no G-Eval
  std::size_t jobs = 1;
  JudgeOptions judge;
};

struct ItemScores {
  std::string case_id;
  int y_pred = 0;
  int y_gold = 0;
  std::optional<GenerationScores> reasoning;   // empty when the gold reasoning is blank
  std::optional<GenerationScores> conditions;  // only when the gold record has conditions
  std::string error;                           // embedding failure, if any
};

struct GenerationMeans {
  std::size_t items = 0;
  double rouge_l = 0.0;
  double bleu = 0.0;
  double meteor = 0.0;
  std::optional<double> bertscore_f1;      // rescaled when a baseline is set
  std::optional<double> bertscore_f1_raw;  // always unscaled
};

struct SetupSummary {
  SetupId setup = SetupId::S1_Vanilla;
  std::size_t gold_items = 0;
  std::size_t scored_items = 0;
  std::size_t missing_predictions = 0;
  std::size_t item_errors = 0;
  ClassificationReport macro;
  ClassificationReport binary;
  GenerationMeans reasoning;
  GenerationMeans conditions;
  std::optional<GEvalMeans> geval;
  std::size_t geval_failures = 0;
};

struct SetupEvaluation {
  SetupSummary summary;
  std::vector<ItemScores> items;              // by case_id
  std::optional<GEvalSummary> geval;
};

nlohmann::ordered_json to_json(const SetupSummary& s);
SetupSummary setup_summary_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const ItemScores& s);

// Joins predictions with gold records by case_id. Predictions for unknown
// cases are skipped with a warning; gold cases without a prediction count as
// missing. `gateway` may be null when neither embeddings nor a judge is used.
SetupEvaluation evaluate_setup(SetupId setup, std::span<const Prediction> predictions,
                               std::span<const CaseRecord> golds, Gateway* gateway, const EvaluationOptions& options,
                               Diagnostics* diag = nullptr);

// summary.json, items.jsonl and (with a judge) geval.jsonl under `dir`.
void write_setup_evaluation(const SetupEvaluation& e, const std::filesystem::path& dir);

inline constexpr std::size_t kTableMetricColumns = 11;

struct TableRow {
  SetupId setup = SetupId::S1_Vanilla;
  // Accuracy, Precision, Recall, F1 | ROUGE-L, BLEU, METEOR, BERTScore | BLEU, METEOR, BERTScore.
  std::array<std::optional<double>, kTableMetricColumns> values{};
};

struct EvaluationTable {
  std::vector<TableRow> rows;  // table order

  static const std::array<std::string_view, kTableMetricColumns>& column_names();
  std::string to_csv() const;  // four decimals; blank for a missing value
  nlohmann::ordered_json to_json() const;
  std::string to_markdown() const;
};

// Rows follow the fixed table order whatever the input order. Duplicate
// setups throw PreconditionError.
EvaluationTable assemble_table(std::span<const SetupSummary> summaries, Averaging mode = Averaging::Macro);

}  // namespace bailbench
