#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small ASCII-oriented string helpers shared by the parsers. UTF-8 bytes
// outside ASCII pass through unchanged.
namespace bailbench::text {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

// Case-insensitive search; npos when absent.
std::size_t ifind(std::string_view haystack, std::string_view needle, std::size_t from = 0);
inline bool icontains(std::string_view haystack, std::string_view needle) {
  return ifind(haystack, needle) != std::string_view::npos;
}
bool istarts_with(std::string_view s, std::string_view prefix);

// Replaces runs of ASCII whitespace with a single space and trims.
std::string collapse_whitespace(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string_view> split_whitespace(std::string_view s);

// Decodes one UTF-8 code point at s[pos]; advances pos. Invalid bytes decode
// as U+FFFD and consume a single byte.
char32_t next_code_point(std::string_view s, std::size_t& pos);
bool is_unicode_space(char32_t cp);

std::optional<long long> parse_int(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace bailbench::text
