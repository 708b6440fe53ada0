#include "bailbench/common/template.hpp"

#include <cctype>
#include <stdexcept>

namespace bailbench {

std::string render_template(std::string_view tmpl, const std::map<std::string, std::string, std::less<>>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    auto open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    out.append(tmpl.substr(pos, open - pos));
    auto close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) throw std::invalid_argument("unterminated placeholder in template");
    auto name = tmpl.substr(open + 2, close - open - 2);
    auto it = values.find(name);
    if (it == values.end()) throw std::invalid_argument("no value for placeholder {{" + std::string(name) + "}}");
    out.append(it->second);
    pos = close + 2;
  }
  return out;
}

std::size_t count_words(std::string_view text) {
  std::size_t words = 0;
  bool in_word = false;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      in_word = false;
    } else if (c < 0x80 && std::ispunct(c)) {
      ++words;
      in_word = false;
    } else if (!in_word) {
      ++words;
      in_word = true;
    }
  }
  return words;
}

std::size_t estimate_tokens(std::string_view text) { return (count_words(text) * 13 + 9) / 10; }

}  // namespace bailbench
