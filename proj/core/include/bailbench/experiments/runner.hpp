#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bailbench/common/diagnostics.hpp"
#include "bailbench/corpus/case_record.hpp"
#include "bailbench/experiments/prediction.hpp"
#include "bailbench/experiments/setup.hpp"
#include "bailbench/gateway/gateway.hpp"
#include "bailbench/statutes/index.hpp"

namespace bailbench {

struct RunOptions {
  std::string run_id;
  std::size_t jobs = 1;
  std::size_t context_budget = kDefaultContextBudget;
  std::size_t prompt_budget = 0;  // 0: unlimited
  int max_new_tokens = 512;
  double temperature = 0.0;
  double max_item_error_rate = 0.10;
  bool dry_run = false;  // render prompts only; no gateway traffic
};

struct ItemError {
  std::string case_id;
  std::string message;
  bool operator==(const ItemError&) const = default;
};

struct PromptRecord {
  std::string case_id;
  std::string prompt;
};

struct SetupRun {
  ExperimentSetup setup;
  std::vector<Prediction> predictions;  // by case_id
  std::vector<ItemError> errors;        // by case_id
  std::vector<PromptRecord> prompts;    // by case_id
  std::size_t records = 0;
  bool failed = false;
  nlohmann::ordered_json manifest;
};

// One prediction (or item error) per record, processed on `jobs` workers.
// Output order is by case_id regardless of completion order. The run is
// marked failed when errors/records exceeds max_item_error_rate. Context
// setups need `index`; a null index is a ConfigError for them.
SetupRun run_setup(const ExperimentSetup& setup, std::span<const CaseRecord> records, const StatuteIndex* index,
                   Gateway* gateway, const RunOptions& options, Diagnostics* diag = nullptr);

// predictions.jsonl, errors.jsonl, prompts.jsonl and manifest.json under `dir`.
void write_setup_run(const SetupRun& run, const std::filesystem::path& dir);

// Reads predictions.jsonl back.
std::vector<Prediction> load_predictions(const std::filesystem::path& path);

}  // namespace bailbench
