#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "bailbench/common/diagnostics.hpp"
#include "bailbench/common/result.hpp"
#include "bailbench/gateway/gateway.hpp"

namespace bailbench {

// The rubric prompt: three criteria, step-by-step assessment, then score
// lines. Throws PreconditionError when any text is blank.
std::string render_judge_prompt(std::string_view explanation, std::string_view reference,
                                 std::string_view case_summary);

// Reads "FACTUAL_ACCURACY: 7"-style lines (case and separators tolerant;
// the last line per criterion wins). Scores outside [1,10] are clamped with
// a warning. OVERALL defaults to the rounded mean of the three criteria.
// nullopt when any of the three criteria is missing.
std::optional<JudgeVerdict> parse_judge_reply(std::string_view reply, Diagnostics* diag = nullptr,
                                              std::string_view item = {});

struct JudgeOptions {
  int max_new_tokens = 512;
  int retries = 1;  // extra attempts after an unparseable reply
};

// Renders, queries and parses; a reply still unparseable after the retries
// is an item error, not an exception. Transport failures are item errors too.
Result<JudgeVerdict, std::string> judge(Gateway& gateway, std::string_view endpoint_id, std::string_view explanation,
                                        std::string_view reference, std::string_view case_summary,
                                        std::string_view tag, Diagnostics* diag = nullptr,
                                        const JudgeOptions& options = {});

}  // namespace bailbench
