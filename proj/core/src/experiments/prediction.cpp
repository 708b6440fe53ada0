#include "bailbench/experiments/prediction.hpp"

#include <cctype>
#include <cmath>

#include "bailbench/common/assets.hpp"
#include "bailbench/common/errors.hpp"
#include "bailbench/common/hash.hpp"
#include "bailbench/common/template.hpp"
#include "bailbench/common/text.hpp"
#include "bailbench/extraction/narrative.hpp"
#include "bailbench/extraction/prompt.hpp"

namespace bailbench {

namespace {

constexpr std::string_view kTemplate = "prompts/prediction_v1.txt";

std::string or_none(const std::string& v) { return text::trim(v).empty() ? "None" : v; }

}  // namespace

ConfidenceScore confidence_from_logprobs(double l0, double l1) {
  if (std::isnan(l0) || std::isnan(l1) || (std::isinf(l0) && std::isinf(l1)) || l0 == HUGE_VAL || l1 == HUGE_VAL) {
    throw PreconditionError("logprobs must be finite or one of them -inf");
  }
  const double m = std::max(l0, l1);
  const double e0 = std::exp(l0 - m);
  const double e1 = std::exp(l1 - m);
  const double z = e0 + e1;
  return {100.0 * e0 / z, 100.0 * e1 / z};
}

ConfidenceScore confidence_from_logprobs(const std::map<std::string, double>& logprobs) {
  auto a = logprobs.find("0");
  auto b = logprobs.find("1");
  if (a == logprobs.end() || b == logprobs.end()) throw PreconditionError("logprobs for both '0' and '1' are required");
  return confidence_from_logprobs(a->second, b->second);
}

nlohmann::ordered_json to_json(const Prediction& p) {
  nlohmann::ordered_json j;
  j["case_id"] = p.case_id;
  j["setup"] = to_string(p.setup);
  j["y_pred"] = p.y_pred;
  j["rationale"] = p.rationale;
  j["bail_conditions"] = p.bail_conditions;
  if (p.confidence) {
    j["confidence"] = {{"p0", p.confidence->p0}, {"p1", p.confidence->p1}};
  } else {
    j["confidence"] = nullptr;
  }
  return j;
}

Prediction prediction_from_json(const nlohmann::json& j) {
  Prediction p;
  j.at("case_id").get_to(p.case_id);
  auto setup = parse_setup_id(j.at("setup").get<std::string>());
  if (!setup) throw std::invalid_argument("unknown setup in prediction");
  p.setup = *setup;
  j.at("y_pred").get_to(p.y_pred);
  if (p.y_pred != 0 && p.y_pred != 1) throw std::invalid_argument("y_pred must be 0 or 1");
  p.rationale = j.value("rationale", std::string{});
  p.bail_conditions = j.value("bail_conditions", std::string{});
  if (auto c = j.find("confidence"); c != j.end() && !c->is_null()) {
    p.confidence = ConfidenceScore{c->at("p0").get<double>(), c->at("p1").get<double>()};
  }
  return p;
}

namespace {

// A '0' or '1' not glued to other digits or letters.
std::optional<int> standalone_label(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') continue;
    const bool left_ok = i == 0 || !std::isalnum(static_cast<unsigned char>(s[i - 1]));
    const bool right_ok = i + 1 == s.size() || !std::isalnum(static_cast<unsigned char>(s[i + 1]));
    if (left_ok && right_ok) return s[i] - '0';
    // Skip the rest of a number so "10 days" never yields its '0'.
    while (i + 1 < s.size() && std::isalnum(static_cast<unsigned char>(s[i + 1]))) ++i;
  }
  return std::nullopt;
}

}  // namespace

Result<ParsedPrediction, std::string> parse_prediction(std::string_view generation) {
  using R = Result<ParsedPrediction, std::string>;
  const auto text_all = text::trim(generation);
  const auto reasoning_at = text::ifind(text_all, "REASONING:");
  const auto conditions_at = text::ifind(text_all, "CONDITIONS:", reasoning_at == std::string_view::npos ? 0 : reasoning_at);
  const auto first_newline = text_all.find('\n');

  std::string_view head;
  if (reasoning_at != std::string_view::npos) {
    head = text_all.substr(0, reasoning_at);
  } else {
    head = text_all.substr(0, first_newline);
  }
  if (conditions_at != std::string_view::npos && conditions_at < head.size()) head = head.substr(0, conditions_at);

  ParsedPrediction out;
  if (auto label = standalone_label(head)) {
    out.label = *label;
  } else if (auto outcome = map_outcome_text(text_all)) {
    out.label = (*outcome == Outcome::Granted || *outcome == Outcome::Cancelled) ? 1 : 0;
  } else {
    return R::failure("Ambiguous: no 0/1 label or outcome phrase in reply");
  }

  std::string_view rationale;
  if (reasoning_at != std::string_view::npos) {
    const auto start = reasoning_at + 10;
    const auto end = conditions_at == std::string_view::npos ? text_all.size() : conditions_at;
    rationale = end > start ? text_all.substr(start, end - start) : std::string_view{};
  } else if (standalone_label(head) && first_newline != std::string_view::npos) {
    const auto end = conditions_at == std::string_view::npos ? text_all.size() : conditions_at;
    rationale = end > first_newline ? text_all.substr(first_newline + 1, end - first_newline - 1) : std::string_view{};
  } else if (!standalone_label(head)) {
    rationale = text_all.substr(0, conditions_at == std::string_view::npos ? text_all.size() : conditions_at);
  }
  out.rationale = std::string(text::trim(rationale));
  if (out.rationale.empty()) return R::failure("Ambiguous: reply has no rationale");

  if (conditions_at != std::string_view::npos) {
    auto cond = text::trim(text_all.substr(conditions_at + 11));
    if (!text::iequals(cond, "none") && !text::iequals(cond, "none.")) out.bail_conditions = std::string(cond);
  }
  return R::success(std::move(out));
}

std::string build_prediction_prompt(const CaseRecord& r, const ContextBlock* context, std::size_t budget) {
  std::string statutes;
  for (const auto& s : r.statutes) {
    if (!statutes.empty()) statutes += ", ";
    statutes += s.to_string();
  }
  statutes = statutes.empty() ? "None" : "[" + statutes + "]";
  const std::string precedents = r.precedents.empty() ? "None" : text::join(r.precedents, "; ");
  std::string context_text;
  if (context && !context->empty()) {
    context_text = "\nStatutory provisions cited in the case:\n" + context->render() + "\n";
  }
  const bool cancellation = r.bail_type == BailType::Cancellation;

  std::map<std::string, std::string, std::less<>> values{
      {"bail_type", std::string(template_bail_type_label(r.bail_type))},
      {"is_withdrawal", r.is_withdrawal ? "Yes" : "No"},
      {"age", r.age ? std::to_string(*r.age) : "not provided"},
      {"health_issues", r.health_issues ? or_none(*r.health_issues) : "None"},
      {"past_record", r.has_past_record ? "some" : "no"},
      {"statutes", statutes},
      {"precedents", precedents},
      {"incident_details", or_none(r.incident_details)},
      {"arguments_supporting", or_none(r.arguments_supporting)},
      {"arguments_opposing", or_none(r.arguments_opposing)},
      {"context_block", context_text},
      {"positive_meaning", cancellation ? "the bail earlier given should be cancelled" : "bail should be given"},
      {"negative_meaning", cancellation ? "the bail earlier given should stay in force" : "bail should be refused"},
  };
  auto prompt = render_template(asset(kTemplate), values);

  if (budget > 0) {
    const auto required = estimate_tokens(prompt);
    if (required > budget) {
      std::string largest = "template";
      std::size_t largest_tokens = 0;
      for (const char* part : {"incident_details", "arguments_supporting", "arguments_opposing", "statutes",
                               "precedents", "health_issues", "context_block"}) {
        const auto t = estimate_tokens(values[part]);
        if (t > largest_tokens) {
          largest_tokens = t;
          largest = part;
        }
      }
      throw ContextBudgetError(largest, required, budget);
    }
  }
  return prompt;
}

std::string prediction_template_hash() { return sha256_hex(asset(kTemplate)); }

}  // namespace bailbench
