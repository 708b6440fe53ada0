#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "bailbench/common/result.hpp"
#include "bailbench/corpus/case_record.hpp"
#include "bailbench/experiments/setup.hpp"
#include "bailbench/statutes/context.hpp"

namespace bailbench {

struct ConfidenceScore {
  double p0 = 50.0;
  double p1 = 50.0;
  bool operator==(const ConfidenceScore&) const = default;
};

// p_i = 100 * exp(l_i) / (exp(l0) + exp(l1)), computed with log-sum-exp.
ConfidenceScore confidence_from_logprobs(double l0, double l1);
// Needs entries "0" and "1"; throws PreconditionError otherwise.
ConfidenceScore confidence_from_logprobs(const std::map<std::string, double>& logprobs);

struct Prediction {
  std::string case_id;
  SetupId setup = SetupId::S1_Vanilla;
  int y_pred = 0;
  std::string rationale;
  std::string bail_conditions;
  std::optional<ConfidenceScore> confidence;
  bool operator==(const Prediction&) const = default;
};

nlohmann::ordered_json to_json(const Prediction& p);
// Throws std::invalid_argument or nlohmann::json::exception on schema errors.
Prediction prediction_from_json(const nlohmann::json& j);

struct ParsedPrediction {
  int label = 0;
  std::string rationale;
  std::string bail_conditions;  // empty when absent or "None"
};

// Label: the first standalone 0/1 before the REASONING section (or on the
// first line); failing that, the outcome phrase cascade with negations
// first. Fails with "Ambiguous ..." when neither decides, or when the
// reply has no rationale.
Result<ParsedPrediction, std::string> parse_prediction(std::string_view generation);

// Case attributes, then the statute context when given, then the answer
// directive. Never includes the outcome, reasoning or bail conditions.
// budget 0 means unlimited; otherwise an over-budget prompt throws
// ContextBudgetError naming the largest component.
std::string build_prediction_prompt(const CaseRecord& record, const ContextBlock* context, std::size_t budget = 0);

std::string prediction_template_hash();

}  // namespace bailbench
