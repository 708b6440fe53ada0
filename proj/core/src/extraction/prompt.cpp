#include "bailbench/extraction/prompt.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "bailbench/common/assets.hpp"
#include "bailbench/common/errors.hpp"
#include "bailbench/common/hash.hpp"
#include "bailbench/common/template.hpp"
#include "bailbench/common/text.hpp"

namespace bailbench {

namespace {

constexpr std::string_view kTemplate = "prompts/extraction_v1.txt";
constexpr std::string_view kExemplarJudgment = "prompts/extraction_exemplar_judgment.txt";
constexpr std::string_view kExemplarOutput = "prompts/extraction_exemplar_output.txt";

std::string chomp(std::string_view s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
  return std::string(s);
}

std::string dmy(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02u-%02u-%04d", static_cast<unsigned>(d.day()), static_cast<unsigned>(d.month()),
                static_cast<int>(d.year()));
  return buf;
}

std::string or_none(const std::optional<std::string>& v) { return v && !v->empty() ? *v : "None"; }
std::string or_none(const std::string& v) { return v.empty() ? "None" : v; }

}  // namespace

std::string_view template_bail_type_label(BailType t) {
  switch (t) {
    case BailType::Regular: return "Regular-Bail";
    case BailType::Anticipatory: return "Anticipatory-Bail";
    case BailType::Cancellation: return "Bail-Cancellation";
  }
  return "?";
}


std::string ExtractionPrompt::render() const {
  return render_template(asset(kTemplate), {{"exemplar_judgement", exemplar_judgment},
                                            {"exemplar_output", exemplar_output},
                                            {"raw_judgement", target_text}});
}

std::string build_extraction_prompt(std::string_view raw_text, std::size_t budget) {
  if (text::trim(raw_text).empty()) throw PreconditionError("judgment text is empty");
  const auto required = estimate_tokens(raw_text);
  if (required > budget) throw ContextBudgetError("raw_judgement", required, budget);
  ExtractionPrompt p;
  p.exemplar_judgment = chomp(asset(kExemplarJudgment));
  p.exemplar_output = chomp(asset(kExemplarOutput));
  p.target_text = std::string(raw_text);
  return p.render();
}

std::string extraction_template_hash() {
  std::string all;
  for (auto name : {kTemplate, kExemplarJudgment, kExemplarOutput}) {
    all += name;
    all += '\0';
    all += asset(name);
    all += '\0';
  }
  return sha256_hex(all);
}

std::string render_filled_output(const CaseRecord& r) {
  std::string statutes;
  if (r.statutes.empty()) {
    statutes = "None";
  } else {
    statutes = "[";
    for (std::size_t i = 0; i < r.statutes.size(); ++i) {
      if (i) statutes += ", ";
      statutes += r.statutes[i].to_string();
    }
    statutes += "]";
  }
  const std::string precedents = r.precedents.empty() ? "None" : text::join(r.precedents, "; ");

  std::string narrative;
  narrative += "Applicant applied for " + std::string(template_bail_type_label(r.bail_type)) + ". ";
  narrative += "Is it a withdrawal application? " + std::string(r.is_withdrawal ? "Yes" : "No") + ". ";
  narrative += "Age of the accused is " + (r.age ? std::to_string(*r.age) : std::string("not provided")) + ". ";
  narrative += "Health issues for the accused are " + or_none(r.health_issues) + ". ";
  narrative += "There are " + std::string(r.has_past_record ? "some" : "no") + " past criminal records of the accused. ";
  narrative += "Statutes mentioned in the judgement are " + statutes + ". ";
  narrative += "Precedents mentioned in the judgement are " + precedents + ". ";
  narrative += "Details of the incident are " + or_none(r.incident_details) + ". ";
  narrative += "Arguments supporting the bail application are " + or_none(r.arguments_supporting) + ". ";
  narrative += "Arguments opposing the bail application are " + or_none(r.arguments_opposing) + ".";

  nlohmann::ordered_json j;
  j["case"] = narrative;
  j["outcome"] = "The outcome of the case is " + std::string(outcome_phrase(r.outcome)) +
                 ". The bail conditions are " + or_none(r.bail_conditions) + ".";
  j["reasoning"] = "The reasoning for the judgement is " + or_none(r.reasoning) + ".";
  j["date_of_arrest"] = (r.date_of_arrest ? dmy(*r.date_of_arrest) : std::string("not provided")) + ".";
  j["date_of_judgement"] = (r.date_of_judgment ? dmy(*r.date_of_judgment) : std::string("not provided")) + ".";
  return j.dump(4);
}

}  // namespace bailbench
