#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bailbench {

// A brace-delimited key/value object as LLMs tend to write it: JSON, or
// something close to it (single quotes, python triple-quoted strings,
// trailing or missing commas, bare keys, raw newlines inside strings).
struct LenientObject {
  std::vector<std::pair<std::string, std::string>> fields;  // in source order
  std::size_t end = 0;  // one past the closing brace

  // Last value for a key (exact match).
  const std::string* find(std::string_view key) const;
};

// Parses the object whose '{' is at text[open]. Returns nullopt (with a
// reason in *error when given) if no well-formed object starts there.
// String values are unescaped; nested objects/arrays and bare scalars are
// returned as their raw source text.
std::optional<LenientObject> parse_lenient_object(std::string_view text, std::size_t open,
                                                  std::string* error = nullptr);

}  // namespace bailbench
