#include "bailbench/extraction/statute_citations.hpp"

#include <algorithm>
#include <cctype>

#include "bailbench/common/text.hpp"

namespace bailbench {

namespace {

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Characters that end an act name outright.
bool is_hard_stop(char c) { return c == ',' || c == ';' || c == '[' || c == ']' || c == '\n' || c == '"'; }

class Scanner {
 public:
  Scanner(std::string_view s, Diagnostics* diag, std::string_view item) : s_(s), diag_(diag), item_(item) {}

  std::vector<StatuteCitation> run() {
    std::vector<StatuteCitation> out;
    std::size_t pos = 0;
    while ((pos = find_section_word(pos)) != std::string_view::npos) {
      const std::size_t start = pos;
      pos = after_section_word_;
      auto ids = read_ids(pos);
      if (ids.empty()) {
        warn("no section number after 'Section' at offset " + std::to_string(start));
        continue;
      }
      auto act = read_act(pos);
      if (act.empty()) {
        warn("no act name for '" + std::string(s_.substr(start, std::min<std::size_t>(40, s_.size() - start))) + "'");
        continue;
      }
      for (auto& id : ids) {
        StatuteCitation c{std::move(id), act};
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
      }
    }
    return out;
  }

 private:
  void warn(std::string msg) {
    if (diag_) diag_->warn("extraction", std::string(item_), "statutes", std::move(msg));
  }

  // Finds "section"/"sections"/"sec." as a whole word; sets after_section_word_.
  std::size_t find_section_word(std::size_t from) {
    while (from < s_.size()) {
      auto hit = text::ifind(s_, "sec", from);
      if (hit == std::string_view::npos) return hit;
      const bool word_start = hit == 0 || !is_alnum(s_[hit - 1]);
      std::size_t end = hit + 3;
      bool ok = false;
      if (word_start) {
        if (text::istarts_with(s_.substr(hit), "sections")) {
          end = hit + 8;
          ok = true;
        } else if (text::istarts_with(s_.substr(hit), "section")) {
          end = hit + 7;
          ok = true;
        } else if (end < s_.size() && s_[end] == '.') {
          end += 1;
          ok = true;
        }
        if (ok && end < s_.size() && is_alpha(s_[end])) ok = false;
      }
      if (ok) {
        after_section_word_ = end;
        return hit;
      }
      from = hit + 1;
    }
    return std::string_view::npos;
  }

  void skip_space(std::size_t& pos) const {
    while (pos < s_.size() && (s_[pos] == ' ' || s_[pos] == '\t' || s_[pos] == '\r')) ++pos;
  }

  // <digits>[-]?[letters]* ( '(' alnum+ ')' )*
  std::string read_id(std::size_t& pos) const {
    std::size_t p = pos;
    if (p >= s_.size() || !is_digit(s_[p])) return {};
    while (p < s_.size() && is_digit(s_[p])) ++p;
    std::size_t suffix = p;
    if (suffix + 1 < s_.size() && s_[suffix] == '-' && is_alpha(s_[suffix + 1])) ++suffix;
    std::size_t letters = suffix;
    while (letters < s_.size() && is_alpha(s_[letters]) && letters - suffix < 3) ++letters;
    // Suffix letters only when short and not the start of a word ("41A", "498-A", not "34IPC").
    if (letters > suffix && (letters >= s_.size() || !is_alpha(s_[letters]))) p = letters;
    while (p < s_.size() && s_[p] == '(') {
      std::size_t q = p + 1;
      while (q < s_.size() && is_alnum(s_[q]) && q - p <= 6) ++q;
      if (q == p + 1 || q >= s_.size() || s_[q] != ')') break;
      p = q + 1;
    }
    std::string id(s_.substr(pos, p - pos));
    pos = p;
    return id;
  }

  std::vector<std::string> read_ids(std::size_t& pos) const {
    std::vector<std::string> ids;
    std::size_t p = pos;
    skip_space(p);
    auto first = read_id(p);
    if (first.empty()) return ids;
    ids.push_back(std::move(first));
    while (true) {
      std::size_t q = p;
      skip_space(q);
      if (q < s_.size() && (s_[q] == ',' || s_[q] == '/' || s_[q] == '&')) {
        ++q;
      } else if (text::istarts_with(s_.substr(q), "and ")) {
        q += 4;
      } else {
        break;
      }
      skip_space(q);
      auto next = read_id(q);
      if (next.empty()) break;
      ids.push_back(std::move(next));
      p = q;
    }
    pos = p;
    return ids;
  }

  // Capitalized words (plus connectives between them) up to a hard stop.
  std::string read_act(std::size_t& pos) const {
    std::vector<std::string_view> words;
    std::size_t p = pos;
    std::size_t pending_connectives = 0;
    while (true) {
      skip_space(p);
      if (p >= s_.size() || is_hard_stop(s_[p])) break;
      std::size_t q = p;
      while (q < s_.size() && !is_space(s_[q]) && !is_hard_stop(s_[q])) ++q;
      auto word = s_.substr(p, q - p);
      if (text::iequals(word, "section") || text::iequals(word, "sections") || text::iequals(word, "r/w") ||
          text::iequals(word, "read")) {
        break;
      }
      const bool connective = text::iequals(word, "of") || text::iequals(word, "the") ||
                              text::iequals(word, "and") || word == "&" || text::iequals(word, "for");
      const bool capital = is_upper(word.front()) || (is_digit(word.front()) && !words.empty());
      if (connective) {
        words.push_back(word);
        ++pending_connectives;
      } else if (capital) {
        words.push_back(word);
        pending_connectives = 0;
        if (word.back() == '.' && std::count(word.begin(), word.end(), '.') == 1) {
          p = q;
          break;  // sentence end: "... IPC. The accused ..."
        }
      } else {
        break;
      }
      p = q;
    }
    words.resize(words.size() - pending_connectives);
    // Leading "of the" as in "Section 302 of the Indian Penal Code".
    std::size_t lead = 0;
    while (lead < words.size() && (text::iequals(words[lead], "of") || text::iequals(words[lead], "the"))) ++lead;
    std::string act;
    for (std::size_t i = lead; i < words.size(); ++i) {
      if (!act.empty()) act += ' ';
      act += words[i];
    }
    if (!act.empty() && act.back() == '.' && std::count(act.begin(), act.end(), '.') == 1) act.pop_back();
    pos = p;
    return act;
  }

  std::string_view s_;
  Diagnostics* diag_;
  std::string_view item_;
  std::size_t after_section_word_ = 0;
};

}  // namespace

std::vector<StatuteCitation> parse_statute_citations(std::string_view text_in, Diagnostics* diag,
                                                     std::string_view item) {
  auto trimmed = text::trim(text_in);
  if (trimmed.empty() || text::iequals(trimmed, "none") || text::iequals(trimmed, "none.") ||
      text::iequals(trimmed, "[]") || text::iequals(trimmed, "not provided")) {
    return {};
  }
  auto out = Scanner(trimmed, diag, item).run();
  if (out.empty() && diag) {
    diag->warn("extraction", std::string(item), "statutes",
               "no statute citations recognized in '" + std::string(trimmed.substr(0, 80)) + "'");
  }
  return out;
}

}  // namespace bailbench
