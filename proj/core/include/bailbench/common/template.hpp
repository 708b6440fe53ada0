#pragma once

#include <map>
#include <string>
#include <string_view>

namespace bailbench {

// Substitutes {{name}} placeholders in one pass (inserted values are not
// re-scanned). Throws std::invalid_argument for a placeholder without a
// value or an unterminated "{{".
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string, std::less<>>& values);

// Estimated model tokens: ceil(1.3 * words), where words are maximal runs of
// non-space, non-punctuation characters plus each ASCII punctuation mark.
std::size_t estimate_tokens(std::string_view text);
std::size_t count_words(std::string_view text);

}  // namespace bailbench
