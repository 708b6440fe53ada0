#pragma once

#include <string_view>

#include "bailbench/common/result.hpp"
#include "bailbench/extraction/types.hpp"

namespace bailbench {

// Finds the ```json fenced block (or the first brace-delimited object when
// there is no fence), parses it leniently and pulls out the five template
// fields. Any failure is UnparseableOutput. Never throws on arbitrary bytes.
Result<ExtractedCase, ExtractionFailure> parse_extraction_output(std::string_view model_output);

}  // namespace bailbench
