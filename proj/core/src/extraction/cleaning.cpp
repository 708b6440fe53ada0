#include "bailbench/extraction/cleaning.hpp"

#include "bailbench/common/text.hpp"

namespace bailbench {

Result<CandidateRecord, ExtractionFailure> assemble_candidate(std::string case_id, std::string court,
                                                              const ExtractedCase& extracted, Diagnostics* diag) {
  using R = Result<CandidateRecord, ExtractionFailure>;
  if (text::trim(extracted.case_narrative).empty()) {
    return R::failure({DiscardReason::UnparseableOutput, "empty case narrative"});
  }
  auto narrative = parse_case_narrative(extracted.case_narrative, diag, case_id);
  if (!narrative.ok()) return R::failure({DiscardReason::UnparseableOutput, narrative.error()});

  CandidateRecord c;
  c.narrative = std::move(narrative.value());
  auto outcome = parse_outcome_field(extracted.outcome_text, c.narrative.bail_type);
  c.outcome = outcome.outcome;
  c.bail_conditions = std::move(outcome.bail_conditions);
  if (!c.outcome && diag) {
    diag->warn("extraction", case_id, "outcome", "outcome not mappable from '" + extracted.outcome_text + "'");
  }
  c.reasoning = parse_reasoning_field(extracted.reasoning_text);
  c.date_of_arrest = parse_date(extracted.arrest_text, diag, case_id, "date_of_arrest");
  c.date_of_judgment = parse_date(extracted.judgment_text, diag, case_id, "date_of_judgment");
  c.case_id = std::move(case_id);
  c.court = std::move(court);
  return R::success(std::move(c));
}

Result<CaseRecord, DiscardReason> clean_filter(const CandidateRecord& c, Diagnostics* diag) {
  using R = Result<CaseRecord, DiscardReason>;
  const auto& n = c.narrative;
  if (!n.incident_details || text::trim(*n.incident_details).empty()) return R::failure(DiscardReason::MissingIncident);
  if (n.statutes.empty()) return R::failure(DiscardReason::MissingStatutes);
  if (!c.reasoning || text::trim(*c.reasoning).empty()) return R::failure(DiscardReason::MissingReasoning);
  if (!c.outcome || !n.bail_type || !outcome_matches(*n.bail_type, *c.outcome)) {
    return R::failure(DiscardReason::MissingOutcome);
  }

  auto note = [&](const char* field, std::string msg) {
    if (diag) diag->warn("cleaning", c.case_id, field, std::move(msg));
  };

  CaseRecord r;
  r.case_id = c.case_id;
  r.court = c.court;
  r.bail_type = *n.bail_type;
  if (n.is_withdrawal) {
    r.is_withdrawal = *n.is_withdrawal;
  } else {
    note("is_withdrawal", "absent; defaulted to false");
  }
  r.age = n.age;
  r.health_issues = n.health_issues;
  if (n.has_past_record) {
    r.has_past_record = *n.has_past_record;
  } else {
    note("has_past_record", "absent; defaulted to false");
  }
  r.statutes = n.statutes;
  r.precedents = n.precedents;
  r.incident_details = *n.incident_details;
  r.arguments_supporting = n.arguments_supporting;
  r.arguments_opposing = n.arguments_opposing;
  r.outcome = *c.outcome;
  r.bail_conditions = c.bail_conditions;
  r.reasoning = *c.reasoning;
  r.date_of_arrest = c.date_of_arrest;
  r.date_of_judgment = c.date_of_judgment;
  if (r.date_of_arrest && r.date_of_judgment && days_between(*r.date_of_arrest, *r.date_of_judgment) < 0) {
    note("date_of_arrest", "judgment date precedes arrest date; arrest date dropped");
    r.date_of_arrest.reset();
  }
  return R::success(std::move(r));
}

}  // namespace bailbench
