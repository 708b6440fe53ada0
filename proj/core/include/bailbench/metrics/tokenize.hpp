#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bailbench {

// Word tokens for the lexical metrics: lowercased, split on Unicode
// whitespace, with leading and trailing punctuation stripped. Tokens that
// are nothing but punctuation disappear.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace bailbench
