#pragma once

#include <optional>
#include <string>

#include "bailbench/common/diagnostics.hpp"
#include "bailbench/common/result.hpp"
#include "bailbench/corpus/case_record.hpp"
#include "bailbench/extraction/narrative.hpp"
#include "bailbench/extraction/types.hpp"

namespace bailbench {

// A structurally parsed document before the completeness rules apply.
struct CandidateRecord {
  std::string case_id;
  std::string court;
  NarrativeFields narrative;
  std::optional<Outcome> outcome;
  std::optional<std::string> bail_conditions;
  std::optional<std::string> reasoning;
  std::optional<Date> date_of_arrest;
  std::optional<Date> date_of_judgment;
};

// Runs the narrative/outcome/reasoning/date parsers over an ExtractedCase.
// Fails with UnparseableOutput when the bail type cannot be recovered.
Result<CandidateRecord, ExtractionFailure> assemble_candidate(std::string case_id, std::string court,
                                                              const ExtractedCase& extracted,
                                                              Diagnostics* diag = nullptr);

// Discards a candidate missing incident details, statutes, reasoning or a
// mappable outcome (checked in that order, one reason per document);
// otherwise returns a CaseRecord satisfying every record invariant.
Result<CaseRecord, DiscardReason> clean_filter(const CandidateRecord& candidate, Diagnostics* diag = nullptr);

}  // namespace bailbench
