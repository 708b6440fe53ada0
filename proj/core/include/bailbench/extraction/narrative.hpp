#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bailbench/common/date.hpp"
#include "bailbench/common/diagnostics.hpp"
#include "bailbench/common/result.hpp"
#include "bailbench/corpus/case_record.hpp"

namespace bailbench {

// Attributes recovered from the "case" paragraph. Optional members are
// absent when the template sentence is missing or says "not provided"/"None".
struct NarrativeFields {
  std::optional<BailType> bail_type;
  std::optional<bool> is_withdrawal;
  std::optional<int> age;
  std::optional<std::string> health_issues;
  std::optional<bool> has_past_record;
  std::vector<StatuteCitation> statutes;
  std::vector<std::string> precedents;
  std::optional<std::string> incident_details;
  std::string arguments_supporting;  // "None" -> empty
  std::string arguments_opposing;

  bool operator==(const NarrativeFields&) const = default;
};

// Sentence-stem matching over the template paragraph. A missing stem leaves
// its attribute absent and adds a field-level warning; an unrecoverable
// bail type fails the whole record. Throws PreconditionError on blank input.
Result<NarrativeFields, std::string> parse_case_narrative(std::string_view narrative, Diagnostics* diag = nullptr,
                                                          std::string_view item = {});

// Maps outcome wording onto the enum: the four template phrases first, then
// a keyword cascade with negations tried before affirmations. `bail_type`
// disambiguates "rejected"/"allowed" for cancellation applications and
// rejects outcomes from the wrong family.
std::optional<Outcome> map_outcome_text(std::string_view text, std::optional<BailType> bail_type = std::nullopt);

struct OutcomeField {
  std::optional<Outcome> outcome;
  std::optional<std::string> bail_conditions;
};

// "The outcome of the case is <...>. The bail conditions are <...>."
OutcomeField parse_outcome_field(std::string_view outcome_text, std::optional<BailType> bail_type);

// "The reasoning for the judgement is <...>." -> absent when "None".
std::optional<std::string> parse_reasoning_field(std::string_view reasoning_text);

// Accepts DD-MM-YYYY, DD/MM/YYYY, DD.MM.YYYY, "DD Month YYYY" and ISO
// YYYY-MM-DD (numeric dates are day-first). "not provided"/empty give
// nullopt silently; anything else unrecognized gives nullopt plus a warning.
std::optional<Date> parse_date(std::string_view text, Diagnostics* diag = nullptr, std::string_view item = {},
                               std::string_view field = {});

}  // namespace bailbench
