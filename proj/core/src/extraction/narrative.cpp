#include "bailbench/extraction/narrative.hpp"

#include <array>
#include <cctype>

#include "bailbench/common/errors.hpp"
#include "bailbench/common/text.hpp"
#include "bailbench/extraction/statute_citations.hpp"

namespace bailbench {

namespace {

enum Stem : std::size_t {
  kBailType,
  kWithdrawal,
  kAge,
  kHealth,
  kPastRecord,
  kStatutes,
  kPrecedents,
  kIncident,
  kSupporting,
  kOpposing,
  kStemCount
};

struct StemSpec {
  const char* field;
  std::array<const char*, 4> variants;  // unused slots are nullptr
};

// Fixed sentence openings of the "case" paragraph, in template order.
constexpr std::array<StemSpec, kStemCount> kStems = {{
    {"bail_type", {"Applicant applied for", nullptr, nullptr, nullptr}},
    {"is_withdrawal", {"Is it a withdrawal application?", nullptr, nullptr, nullptr}},
    {"age", {"Age of the accused is", nullptr, nullptr, nullptr}},
    {"health_issues", {"Health issues for the accused are", nullptr, nullptr, nullptr}},
    {"has_past_record",
     {"There are no past criminal records", "There are some past criminal records", "There is no past criminal record",
      "There is some past criminal record"}},
    {"statutes", {"Statutes mentioned in the judgement are", "Statutes mentioned in the judgment are", nullptr, nullptr}},
    {"precedents",
     {"Precedents mentioned in the judgement are", "Precedents mentioned in the judgment are", nullptr, nullptr}},
    {"incident_details", {"Details of the incident are", nullptr, nullptr, nullptr}},
    {"arguments_supporting", {"Arguments supporting the bail application are", nullptr, nullptr, nullptr}},
    {"arguments_opposing", {"Arguments opposing the bail application are", nullptr, nullptr, nullptr}},
}};

struct StemHit {
  std::size_t start = std::string_view::npos;
  std::size_t end = 0;
  std::size_t variant = 0;
};

StemHit find_stem(std::string_view text, const StemSpec& spec, std::size_t from) {
  StemHit best;
  for (std::size_t v = 0; v < spec.variants.size() && spec.variants[v]; ++v) {
    const std::string_view needle = spec.variants[v];
    auto hit = text::ifind(text, needle, from);
    if (hit != std::string_view::npos && hit < best.start) best = {hit, hit + needle.size(), v};
  }
  return best;
}

// One trailing sentence period; a closing `."` left over from the
// template's quoting is also dropped.
std::string_view strip_period(std::string_view v) {
  v = text::trim(v);
  if (!v.empty() && v.back() == '.') {
    v.remove_suffix(1);
  } else if (v.size() >= 2 && v.substr(v.size() - 2) == ".\"") {
    v.remove_suffix(2);
  }
  return text::trim(v);
}

bool is_none(std::string_view v) {
  return v.empty() || text::iequals(v, "none") || text::iequals(v, "not provided") || text::iequals(v, "nil") ||
         text::iequals(v, "n/a");
}

std::optional<BailType> parse_bail_type_text(std::string_view v) {
  if (text::icontains(v, "anticipatory")) return BailType::Anticipatory;
  if (text::icontains(v, "cancel")) return BailType::Cancellation;
  if (text::icontains(v, "regular")) return BailType::Regular;
  return std::nullopt;
}

std::optional<int> parse_age(std::string_view v) {
  std::size_t i = 0;
  while (i < v.size() && std::isdigit(static_cast<unsigned char>(v[i]))) ++i;
  if (i == 0 || i > 3) return std::nullopt;
  auto n = text::parse_int(v.substr(0, i));
  if (!n || *n < 1 || *n > 150) return std::nullopt;
  return static_cast<int>(*n);
}

std::vector<std::string> parse_precedents(std::string_view v) {
  if (v.size() >= 2 && v.front() == '[' && v.back() == ']') v = v.substr(1, v.size() - 2);
  std::vector<std::string> out;
  for (auto& part : text::split(v, ';')) {
    auto t = text::trim(part);
    if (!t.empty() && !is_none(t)) out.emplace_back(t);
  }
  return out;
}

}  // namespace

Result<NarrativeFields, std::string> parse_case_narrative(std::string_view narrative, Diagnostics* diag,
                                                          std::string_view item) {
  using R = Result<NarrativeFields, std::string>;
  if (text::trim(narrative).empty()) throw PreconditionError("case narrative is empty");
  const std::string flat = text::collapse_whitespace(narrative);
  const std::string_view s = flat;

  auto warn = [&](std::string_view field, std::string msg) {
    if (diag) diag->warn("extraction", std::string(item), std::string(field), std::move(msg));
  };

  std::array<StemHit, kStemCount> hits{};
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < kStemCount; ++i) {
    hits[i] = find_stem(s, kStems[i], cursor);
    if (hits[i].start != std::string_view::npos) cursor = hits[i].end;
  }
  auto value_of = [&](std::size_t i) -> std::optional<std::string_view> {
    if (hits[i].start == std::string_view::npos) return std::nullopt;
    std::size_t stop = s.size();
    for (std::size_t j = i + 1; j < kStemCount; ++j) {
      if (hits[j].start != std::string_view::npos) {
        stop = hits[j].start;
        break;
      }
    }
    return strip_period(s.substr(hits[i].end, stop - hits[i].end));
  };

  NarrativeFields f;
  for (std::size_t i = 0; i < kStemCount; ++i) {
    if (hits[i].start == std::string_view::npos) warn(kStems[i].field, "template sentence not found");
  }

  auto bail = value_of(kBailType);
  if (bail) f.bail_type = parse_bail_type_text(*bail);
  if (!f.bail_type) return R::failure("bail type not recoverable" + (bail ? " from '" + std::string(*bail) + "'" : ""));

  if (auto v = value_of(kWithdrawal)) {
    if (text::istarts_with(*v, "yes")) {
      f.is_withdrawal = true;
    } else if (text::istarts_with(*v, "no")) {
      f.is_withdrawal = false;
    } else {
      warn("is_withdrawal", "unrecognized answer '" + std::string(*v) + "'");
    }
  }

  if (auto v = value_of(kAge); v && !is_none(*v)) {
    f.age = parse_age(*v);
    if (!f.age) warn("age", "unusable age '" + std::string(*v) + "'");
  }

  if (auto v = value_of(kHealth); v && !is_none(*v)) f.health_issues = std::string(*v);

  if (hits[kPastRecord].start != std::string_view::npos) {
    // Variants 0 and 2 say "no", 1 and 3 say "some".
    f.has_past_record = hits[kPastRecord].variant % 2 == 1;
  }

  if (auto v = value_of(kStatutes)) f.statutes = parse_statute_citations(*v, diag, item);
  if (auto v = value_of(kPrecedents); v && !is_none(*v)) f.precedents = parse_precedents(*v);
  if (auto v = value_of(kIncident); v && !is_none(*v)) f.incident_details = std::string(*v);
  if (auto v = value_of(kSupporting); v && !is_none(*v)) f.arguments_supporting = std::string(*v);
  if (auto v = value_of(kOpposing); v && !is_none(*v)) f.arguments_opposing = std::string(*v);
  return R::success(std::move(f));
}

namespace {

enum class Family { Bail, Cancellation };

Family family_of(BailType t) { return t == BailType::Cancellation ? Family::Cancellation : Family::Bail; }

Outcome outcome_for(Family fam, bool positive) {
  if (fam == Family::Cancellation) return positive ? Outcome::Cancelled : Outcome::NotCancelled;
  return positive ? Outcome::Granted : Outcome::NotGranted;
}

struct Cue {
  const char* phrase;
  bool positive;
  std::optional<Family> family;  // nullopt: fits either family
};

// Negations come first so "not granted" never reads as "granted".
constexpr Cue kCues[] = {
    {"bail not granted", false, Family::Bail},
    {"bail not cancelled", false, Family::Cancellation},
    {"bail granted", true, Family::Bail},
    {"bail cancelled", true, Family::Cancellation},
    {"not granted", false, Family::Bail},
    {"not be granted", false, Family::Bail},
    {"not cancelled", false, Family::Cancellation},
    {"not canceled", false, Family::Cancellation},
    {"not allowed", false, std::nullopt},
    {"rejected", false, std::nullopt},
    {"dismissed", false, std::nullopt},
    {"refused", false, std::nullopt},
    {"denied", false, std::nullopt},
    {"declined", false, std::nullopt},
    {"granted", true, Family::Bail},
    {"enlarged on bail", true, Family::Bail},
    {"released on bail", true, Family::Bail},
    {"cancelled", true, Family::Cancellation},
    {"canceled", true, Family::Cancellation},
    {"allowed", true, std::nullopt},
};

}  // namespace

std::optional<Outcome> map_outcome_text(std::string_view text_in, std::optional<BailType> bail_type) {
  const std::string t = text::to_lower(text::collapse_whitespace(strip_period(text_in)));
  if (t.empty()) return std::nullopt;
  std::optional<Family> wanted;
  if (bail_type) wanted = family_of(*bail_type);

  for (auto o : {Outcome::Granted, Outcome::NotGranted, Outcome::Cancelled, Outcome::NotCancelled}) {
    if (text::iequals(t, outcome_phrase(o))) {
      if (wanted && family_of(o == Outcome::Cancelled || o == Outcome::NotCancelled ? BailType::Cancellation
                                                                                     : BailType::Regular) != *wanted) {
        return std::nullopt;
      }
      return o;
    }
  }
  for (const auto& cue : kCues) {
    if (t.find(cue.phrase) == std::string::npos) continue;
    if (cue.family && wanted && *cue.family != *wanted) return std::nullopt;
    Family fam = wanted ? *wanted : cue.family.value_or(t.find("cancel") != std::string::npos ? Family::Cancellation
                                                                                            : Family::Bail);
    return outcome_for(fam, cue.positive);
  }
  return std::nullopt;
}

OutcomeField parse_outcome_field(std::string_view outcome_text, std::optional<BailType> bail_type) {
  const std::string flat = text::collapse_whitespace(outcome_text);
  std::string_view s = flat;
  OutcomeField out;

  constexpr std::string_view kOutcomeStem = "The outcome of the case is";
  constexpr std::string_view kConditionsStem = "The bail conditions are";
  std::size_t begin = 0;
  if (auto o = text::ifind(s, kOutcomeStem); o != std::string_view::npos) begin = o + kOutcomeStem.size();
  auto c = text::ifind(s, kConditionsStem, begin);
  auto outcome_part = s.substr(begin, c == std::string_view::npos ? std::string_view::npos : c - begin);
  out.outcome = map_outcome_text(outcome_part, bail_type);
  if (c != std::string_view::npos) {
    auto cond = strip_period(s.substr(c + kConditionsStem.size()));
    if (!is_none(cond)) out.bail_conditions = std::string(cond);
  }
  return out;
}

std::optional<std::string> parse_reasoning_field(std::string_view reasoning_text) {
  const std::string flat = text::collapse_whitespace(reasoning_text);
  std::string_view s = flat;
  for (std::string_view stem : {"The reasoning for the judgement is", "The reasoning for the judgment is"}) {
    if (auto p = text::ifind(s, stem); p != std::string_view::npos) {
      s = s.substr(p + stem.size());
      break;
    }
  }
  auto v = strip_period(s);
  if (is_none(v)) return std::nullopt;
  return std::string(v);
}

namespace {

constexpr std::array<const char*, 12> kMonths = {"january", "february", "march",     "april",   "may",      "june",
                                                 "july",    "august",   "september", "october", "november", "december"};

std::optional<unsigned> month_from_name(std::string_view w) {
  const auto lw = text::to_lower(w);
  if (lw.size() < 3) return std::nullopt;
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    const std::string_view full = kMonths[i];
    if (lw == full || (lw.size() >= 3 && full.substr(0, lw.size()) == lw && lw.size() <= full.size()))
      return static_cast<unsigned>(i + 1);
  }
  if (lw == "sept") return 9u;
  return std::nullopt;
}

std::optional<int> number(std::string_view s) {
  if (s.empty() || s.size() > 4) return std::nullopt;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  return static_cast<int>(*text::parse_int(s));
}

// "1st" -> 1
std::optional<int> day_number(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  auto suffix = text::to_lower(s.substr(i));
  if (!(suffix.empty() || suffix == "st" || suffix == "nd" || suffix == "rd" || suffix == "th")) return std::nullopt;
  return number(s.substr(0, i));
}

std::optional<Date> numeric_date(std::string_view s) {
  for (char sep : {'-', '/', '.'}) {
    auto parts = text::split(s, sep);
    if (parts.size() != 3) continue;
    auto a = number(parts[0]), b = number(parts[1]), c = number(parts[2]);
    if (!a || !b || !c) continue;
    if (parts[0].size() == 4) return make_date(*a, static_cast<unsigned>(*b), static_cast<unsigned>(*c));
    if (parts[2].size() == 4) return make_date(*c, static_cast<unsigned>(*b), static_cast<unsigned>(*a));
  }
  return std::nullopt;
}

std::optional<Date> worded_date(std::string_view s) {
  std::string cleaned;
  for (char c : s) cleaned += (c == ',') ? ' ' : c;
  auto words = text::split_whitespace(cleaned);
  if (words.size() == 4 && text::iequals(words[1], "of")) words.erase(words.begin() + 1);  // "1st of April 2020"
  if (words.size() != 3) return std::nullopt;
  auto year = number(words[2]);
  if (!year || words[2].size() != 4) return std::nullopt;
  if (auto m = month_from_name(words[1])) {
    if (auto d = day_number(words[0])) return make_date(*year, *m, static_cast<unsigned>(*d));
  }
  if (auto m = month_from_name(words[0])) {
    if (auto d = day_number(words[1])) return make_date(*year, *m, static_cast<unsigned>(*d));
  }
  return std::nullopt;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text_in, Diagnostics* diag, std::string_view item,
                               std::string_view field) {
  auto s = strip_period(text_in);
  while (!s.empty() && (s.front() == '"' || s.front() == '\'')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == '"' || s.back() == '\'' || s.back() == '.')) s.remove_suffix(1);
  s = text::trim(s);
  if (is_none(s)) return std::nullopt;
  if (auto d = numeric_date(s)) return d;
  if (auto d = worded_date(s)) return d;
  if (diag) diag->warn("extraction", std::string(item), std::string(field), "unrecognized date '" + std::string(s) + "'");
  return std::nullopt;
}

}  // namespace bailbench
