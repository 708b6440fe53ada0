#include "bailbench/extraction/lenient_object.hpp"

#include <cctype>

namespace bailbench {

namespace {

constexpr std::size_t kMaxDepth = 64;

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_ident(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-';
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  std::optional<LenientObject> object(std::size_t open, std::string* error) {
    pos_ = open;
    LenientObject obj;
    if (!parse_object(obj, error)) return std::nullopt;
    obj.end = pos_;
    return obj;
  }

 private:
  bool fail(std::string* error, const char* why) {
    if (error) *error = std::string(why) + " at offset " + std::to_string(pos_);
    return false;
  }

  void skip_space() {
    while (pos_ < s_.size() && is_space(s_[pos_])) ++pos_;
  }

  char peek_non_space(std::size_t from) const {
    while (from < s_.size() && is_space(s_[from])) ++from;
    return from < s_.size() ? s_[from] : '\0';
  }

  bool at_triple(char q) const {
    return pos_ + 2 < s_.size() && s_[pos_] == q && s_[pos_ + 1] == q && s_[pos_ + 2] == q;
  }

  bool parse_object(LenientObject& obj, std::string* error) {
    if (pos_ >= s_.size() || s_[pos_] != '{') return fail(error, "expected '{'");
    ++pos_;
    while (true) {
      skip_space();
      while (pos_ < s_.size() && (s_[pos_] == ',' || is_space(s_[pos_]))) ++pos_;
      if (pos_ >= s_.size()) return fail(error, "unterminated object");
      if (s_[pos_] == '}') {
        ++pos_;
        return true;
      }
      std::string key;
      if (!parse_key(key, error)) return false;
      skip_space();
      if (pos_ >= s_.size() || (s_[pos_] != ':' && s_[pos_] != '=')) return fail(error, "expected ':' after key");
      ++pos_;
      skip_space();
      std::string value;
      if (!parse_value(value, error)) return false;
      obj.fields.emplace_back(std::move(key), std::move(value));
    }
  }

  bool parse_key(std::string& key, std::string* error) {
    if (pos_ >= s_.size()) return fail(error, "expected key");
    const char c = s_[pos_];
    if (c == '"' || c == '\'') return parse_string(key, error, /*is_key=*/true);
    if (is_ident(c)) {
      while (pos_ < s_.size() && is_ident(s_[pos_])) key += s_[pos_++];
      return true;
    }
    return fail(error, "expected key");
  }

  bool parse_value(std::string& value, std::string* error) {
    if (pos_ >= s_.size()) return fail(error, "expected value");
    const char c = s_[pos_];
    if (c == '"' || c == '\'') return parse_string(value, error, /*is_key=*/false);
    if (c == '{' || c == '[') return capture_balanced(value, error);
    // Bare scalar (number, null, true) up to the next separator.
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != '}' && s_[pos_] != '\n') ++pos_;
    auto raw = s_.substr(start, pos_ - start);
    while (!raw.empty() && is_space(raw.back())) raw.remove_suffix(1);
    value.assign(raw);
    return true;
  }

  // Raw text of a nested object/array, respecting quoted strings.
  bool capture_balanced(std::string& value, std::string* error) {
    const std::size_t start = pos_;
    std::size_t depth = 0;
    char quote = '\0';
    for (; pos_ < s_.size(); ++pos_) {
      const char c = s_[pos_];
      if (quote) {
        if (c == '\\') {
          ++pos_;
        } else if (c == quote) {
          quote = '\0';
        }
        continue;
      }
      if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '{' || c == '[') {
        if (++depth > kMaxDepth) return fail(error, "nesting too deep");
      } else if (c == '}' || c == ']') {
        if (--depth == 0) {
          ++pos_;
          value.assign(s_.substr(start, pos_ - start));
          return true;
        }
      }
    }
    return fail(error, "unterminated nested value");
  }

  // A quote closes a string when what follows it can only be structure:
  // a separator, the end of the object, the ':' after a key, or (for a
  // missing comma) the start of the next quoted key.
  bool closes_here(std::size_t quote_pos, bool is_key) const {
    const char next = peek_non_space(quote_pos + 1);
    if (is_key) return next == ':' || next == '=';
    if (next == ',' || next == '}' || next == '\0') return true;
    if (next == '"' || next == '\'') return looks_like_key_at(quote_pos + 1);
    return false;
  }

  bool looks_like_key_at(std::size_t from) const {
    while (from < s_.size() && is_space(s_[from])) ++from;
    if (from >= s_.size()) return false;
    const char q = s_[from];
    std::size_t i = from + 1;
    const std::size_t limit = std::min(s_.size(), from + 80);
    while (i < limit && s_[i] != q && s_[i] != '\n') {
      if (!is_ident(s_[i]) && s_[i] != ' ') return false;
      ++i;
    }
    if (i >= limit || s_[i] != q) return false;
    const char after = peek_non_space(i + 1);
    return after == ':';
  }

  bool parse_string(std::string& out, std::string* error, bool is_key) {
    const char q = s_[pos_];
    if (at_triple(q)) {
      pos_ += 3;
      const std::string_view delim = q == '"' ? std::string_view("\"\"\"") : std::string_view("'''");
      const auto close = s_.find(delim, pos_);
      if (close == std::string_view::npos) return fail(error, "unterminated triple-quoted string");
      out.assign(s_.substr(pos_, close - pos_));
      pos_ = close + 3;
      return true;
    }
    ++pos_;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '\\' && pos_ + 1 < s_.size()) {
        append_escape(out);
        continue;
      }
      if (c == q && closes_here(pos_, is_key)) {
        ++pos_;
        return true;
      }
      out += c;
      ++pos_;
    }
    return fail(error, "unterminated string");
  }

  void append_escape(std::string& out) {
    const char e = s_[pos_ + 1];
    pos_ += 2;
    switch (e) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case 'r': out += '\r'; break;
      case 'b': out += '\b'; break;
      case 'f': out += '\f'; break;
      case 'u': append_unicode_escape(out); break;
      default: out += e; break;  // \" \' \\ \/ and unknown escapes
    }
  }

  void append_unicode_escape(std::string& out) {
    auto hex4 = [&](std::size_t at, unsigned& v) {
      if (at + 4 > s_.size()) return false;
      v = 0;
      for (std::size_t k = 0; k < 4; ++k) {
        const char h = s_[at + k];
        v <<= 4;
        if (h >= '0' && h <= '9') v |= static_cast<unsigned>(h - '0');
        else if (h >= 'a' && h <= 'f') v |= static_cast<unsigned>(h - 'a' + 10);
        else if (h >= 'A' && h <= 'F') v |= static_cast<unsigned>(h - 'A' + 10);
        else return false;
      }
      return true;
    };
    unsigned cp = 0;
    if (!hex4(pos_, cp)) {
      out += 'u';
      return;
    }
    pos_ += 4;
    if (cp >= 0xD800 && cp <= 0xDBFF && pos_ + 1 < s_.size() && s_[pos_] == '\\' && s_[pos_ + 1] == 'u') {
      unsigned lo = 0;
      if (hex4(pos_ + 2, lo) && lo >= 0xDC00 && lo <= 0xDFFF) {
        cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
        pos_ += 6;
      }
    }
    if (cp >= 0xD800 && cp <= 0xDFFF) cp = 0xFFFD;
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

const std::string* LenientObject::find(std::string_view key) const {
  const std::string* hit = nullptr;
  for (const auto& [k, v] : fields)
    if (k == key) hit = &v;
  return hit;
}

std::optional<LenientObject> parse_lenient_object(std::string_view text, std::size_t open, std::string* error) {
  if (open >= text.size() || text[open] != '{') {
    if (error) *error = "no '{' at start offset";
    return std::nullopt;
  }
  return Parser(text).object(open, error);
}

}  // namespace bailbench
