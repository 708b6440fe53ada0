#pragma once

#include <string>
#include <string_view>

namespace bailbench {

// The five top-level fields of a filled extraction template.
struct ExtractedCase {
  std::string case_narrative;  // "case"
  std::string outcome_text;    // "outcome" (outcome sentence plus bail conditions)
  std::string reasoning_text;  // "reasoning"
  std::string arrest_text;     // "date_of_arrest"
  std::string judgment_text;   // "date_of_judgement"

  bool operator==(const ExtractedCase&) const = default;
};

enum class DiscardReason { MissingIncident, MissingStatutes, MissingReasoning, MissingOutcome, UnparseableOutput };

inline constexpr DiscardReason kAllDiscardReasons[] = {
    DiscardReason::MissingIncident, DiscardReason::MissingStatutes, DiscardReason::MissingReasoning,
    DiscardReason::MissingOutcome, DiscardReason::UnparseableOutput};

std::string_view to_string(DiscardReason r);

struct ExtractionFailure {
  DiscardReason reason = DiscardReason::UnparseableOutput;
  std::string detail;
};

}  // namespace bailbench
