#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "bailbench/common/errors.hpp"
#include "bailbench/corpus/case_record.hpp"

namespace bailbench {

inline constexpr std::size_t kDefaultExtractionBudget = 12000;

// The one-shot extraction prompt: schema block, one worked example, then
// the judgment to process.
struct ExtractionPrompt {
  std::string template_id = "extraction_v1";
  std::string exemplar_judgment;
  std::string exemplar_output;
  std::string target_text;

  std::string render() const;
};

// Uses the shipped template and exemplar. `budget` caps the estimated
// tokens of raw_text (inclusive). Throws PreconditionError on blank text and
// ContextBudgetError when over budget.
std::string build_extraction_prompt(std::string_view raw_text, std::size_t budget = kDefaultExtractionBudget);

// Hash of the template and exemplar assets, recorded in run manifests.
std::string extraction_template_hash();

// "Regular-Bail", "Anticipatory-Bail", "Bail-Cancellation" as the template writes them.
std::string_view template_bail_type_label(BailType t);

// Fills the extraction template mechanically from a record, producing the
// JSON a perfectly compliant model would return.
std::string render_filled_output(const CaseRecord& record);

}  // namespace bailbench
