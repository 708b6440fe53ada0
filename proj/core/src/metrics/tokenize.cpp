#include "bailbench/metrics/tokenize.hpp"

#include <cctype>

#include "bailbench/common/text.hpp"

namespace bailbench {

namespace {

bool is_punct(char32_t cp) {
  if (cp < 0x80) return std::ispunct(static_cast<int>(cp)) != 0;
  switch (cp) {
    case 0x00A1: case 0x00AB: case 0x00BB: case 0x00BF:  // inverted marks, guillemets
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014: case 0x2015:
    case 0x2018: case 0x2019: case 0x201C: case 0x201D:
    case 0x2026: case 0x2032: case 0x2033:
      return true;
    default:
      return false;
  }
}

struct CodeUnit {
  std::size_t begin;
  std::size_t end;
  char32_t cp;
};

void flush(std::string_view text, std::vector<CodeUnit>& word, std::vector<std::string>& out) {
  std::size_t lo = 0, hi = word.size();
  while (lo < hi && is_punct(word[lo].cp)) ++lo;
  while (hi > lo && is_punct(word[hi - 1].cp)) --hi;
  if (lo < hi) {
    std::string tok(text.substr(word[lo].begin, word[hi - 1].end - word[lo].begin));
    for (auto& c : tok) {
      if (static_cast<unsigned char>(c) < 0x80) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    out.push_back(std::move(tok));
  }
  word.clear();
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text_in) {
  std::vector<std::string> out;
  std::vector<CodeUnit> word;
  std::size_t pos = 0;
  while (pos < text_in.size()) {
    const std::size_t begin = pos;
    const char32_t cp = text::next_code_point(text_in, pos);
    if (text::is_unicode_space(cp)) {
      flush(text_in, word, out);
    } else {
      word.push_back({begin, pos, cp});
    }
  }
  flush(text_in, word, out);
  return out;
}

}  // namespace bailbench
