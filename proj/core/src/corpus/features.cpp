#include "bailbench/corpus/features.hpp"

#include <cctype>
#include <stdexcept>

#include "bailbench/common/assets.hpp"
#include "bailbench/common/errors.hpp"
#include "bailbench/common/io.hpp"
#include "bailbench/common/text.hpp"

namespace bailbench {

std::string_view to_string(AgeGroup g) {
  switch (g) {
    case AgeGroup::Under18: return "Under18";
    case AgeGroup::A18to30: return "A18to30";
    case AgeGroup::A30to50: return "A30to50";
    case AgeGroup::A50to65: return "A50to65";
    case AgeGroup::A65plus: return "A65plus";
  }
  return "?";
}

std::string_view to_string(CrimeCategory c) {
  switch (c) {
    case CrimeCategory::Theft: return "Theft";
    case CrimeCategory::Murder: return "Murder";
    case CrimeCategory::Rape: return "Rape";
    case CrimeCategory::Fraud: return "Fraud";
    case CrimeCategory::Drug: return "Drug";
    case CrimeCategory::Assault: return "Assault";
    case CrimeCategory::Kidnapping: return "Kidnapping";
    case CrimeCategory::DomesticViolence: return "DomesticViolence";
    case CrimeCategory::WhiteCollar: return "WhiteCollar";
    case CrimeCategory::SexualAssault: return "SexualAssault";
    case CrimeCategory::Other: return "Other";
  }
  return "?";
}

std::optional<AgeGroup> parse_age_group(std::string_view s) {
  for (auto g : kAllAgeGroups)
    if (text::iequals(s, to_string(g))) return g;
  return std::nullopt;
}

std::optional<CrimeCategory> parse_crime_category(std::string_view s) {
  for (auto c : kAllCrimeCategories)
    if (text::iequals(s, to_string(c))) return c;
  return std::nullopt;
}

AgeGroup age_group_for(int age) {
  if (age < 18) return AgeGroup::Under18;
  if (age < 30) return AgeGroup::A18to30;
  if (age < 50) return AgeGroup::A30to50;
  if (age < 65) return AgeGroup::A50to65;
  return AgeGroup::A65plus;
}

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// Lowercased, whitespace-collapsed form used on both sides of a match.
std::string normalize(std::string_view s) { return text::to_lower(text::collapse_whitespace(s)); }

bool occurs_at_word_start(std::string_view haystack, std::string_view needle) {
  std::size_t pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string_view::npos) {
    if (pos == 0 || !is_word_char(haystack[pos - 1])) return true;
    ++pos;
  }
  return false;
}

}  // namespace

KeywordTable KeywordTable::parse_tsv(std::string_view tsv) {
  KeywordTable table;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(tsv, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto trimmed = text::trim(line);
    if (trimmed.empty()) continue;
    if (trimmed.front() == '#') {
      auto body = text::trim(trimmed.substr(1));
      if (text::istarts_with(body, "version:")) table.version_ = std::string(text::trim(body.substr(8)));
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw std::invalid_argument("keyword table line " + std::to_string(line_no) + ": missing tab");
    }
    auto pattern = normalize(line.substr(0, tab));
    auto category = parse_crime_category(text::trim(line.substr(tab + 1)));
    if (pattern.empty() || !category) {
      throw std::invalid_argument("keyword table line " + std::to_string(line_no) + ": bad row");
    }
    table.rows_.push_back({std::move(pattern), *category});
  }
  return table;
}

KeywordTable KeywordTable::load(const std::filesystem::path& path) { return parse_tsv(read_text_file(path)); }

const KeywordTable& KeywordTable::builtin() {
  static const KeywordTable table = parse_tsv(asset("crime_keywords.tsv"));
  return table;
}

CrimeCategory KeywordTable::classify(std::string_view text_in) const {
  const auto haystack = normalize(text_in);
  for (const auto& row : rows_) {
    if (occurs_at_word_start(haystack, row.pattern)) return row.category;
  }
  return CrimeCategory::Other;
}

std::optional<CrimeCategory> map_crime_answer(std::string_view answer) {
  std::string squashed;
  for (char c : answer) {
    if (is_word_char(c)) squashed += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (squashed.empty()) return std::nullopt;
  static const std::pair<std::string_view, CrimeCategory> kAliases[] = {
      {"sexualassault", CrimeCategory::SexualAssault},
      {"domesticviolence", CrimeCategory::DomesticViolence},
      {"whitecollar", CrimeCategory::WhiteCollar},
      {"kidnapping", CrimeCategory::Kidnapping},
      {"abduction", CrimeCategory::Kidnapping},
      {"narcotics", CrimeCategory::Drug},
      {"drugs", CrimeCategory::Drug},
      {"drug", CrimeCategory::Drug},
      {"murder", CrimeCategory::Murder},
      {"assault", CrimeCategory::Assault},
      {"theft", CrimeCategory::Theft},
      {"fraud", CrimeCategory::Fraud},
      {"rape", CrimeCategory::Rape},
      {"other", CrimeCategory::Other},
  };
  for (const auto& [alias, cat] : kAliases) {
    if (squashed.rfind(alias, 0) == 0) return cat;
  }
  return std::nullopt;
}

CrimeClassifier::CrimeClassifier(KeywordTable table, LlmCrimeClassifier llm)
    : table_(std::move(table)), llm_(std::move(llm)) {}

CrimeClassification CrimeClassifier::classify(std::string_view incident_details) const {
  if (text::trim(incident_details).empty()) {
    throw PreconditionError("classify_crime: incident_details is empty");
  }
  CrimeClassification out;
  if (llm_) {
    try {
      const auto answer = llm_(incident_details);
      if (auto cat = map_crime_answer(answer)) {
        out.category = *cat;
        out.from_model = true;
        return out;
      }
      out.warning = "classifier answer '" + std::string(text::trim(answer)).substr(0, 80) +
                    "' matched no category; used keyword table";
    } catch (const std::exception& e) {
      out.warning = std::string("classifier endpoint failed (") + e.what() + "); used keyword table";
    }
  }
  out.category = table_.classify(incident_details);
  return out;
}

DerivedFeatures derive_features(const CaseRecord& record, const CrimeClassifier& classifier, Diagnostics* diag) {
  DerivedFeatures f;
  if (record.date_of_arrest && record.date_of_judgment) {
    f.custody_days = days_between(*record.date_of_arrest, *record.date_of_judgment);
  }
  if (record.age) f.age_group = age_group_for(*record.age);
  auto crime = classifier.classify(record.incident_details);
  f.crime_category = crime.category;
  if (crime.warning && diag) diag->warn("corpus", record.case_id, "crime_category", *crime.warning);
  return f;
}

}  // namespace bailbench
