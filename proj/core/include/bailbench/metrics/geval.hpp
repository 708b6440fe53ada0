#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bailbench/common/diagnostics.hpp"
#include "bailbench/gateway/judge.hpp"

namespace bailbench {

struct GEvalItem {
  std::string case_id;
  std::string explanation;
  std::string reference;
  std::string case_summary;
};

struct GEvalItemResult {
  std::string case_id;
  std::optional<JudgeVerdict> verdict;
  std::string error;  // set when verdict is empty
};

struct GEvalMeans {
  double factual_accuracy = 0.0;
  double completeness_coverage = 0.0;
  double clarity_coherence = 0.0;
  double overall = 0.0;
};

struct GEvalSummary {
  std::vector<GEvalItemResult> items;  // input order
  std::optional<GEvalMeans> means;     // empty when every item failed
  std::size_t scored = 0;
  std::size_t failures = 0;
};

nlohmann::ordered_json to_json(const GEvalMeans& m);

// Arithmetic means over the items that produced a verdict.
GEvalSummary summarize_geval(std::vector<GEvalItemResult> items);

// One judge call per item, `jobs` at a time. Failures are recorded per item
// and excluded from the means.
GEvalSummary geval_evaluate(const std::vector<GEvalItem>& items, Gateway& gateway, const std::string& endpoint_id,
                            std::size_t jobs = 1, Diagnostics* diag = nullptr, const JudgeOptions& options = {});

}  // namespace bailbench
