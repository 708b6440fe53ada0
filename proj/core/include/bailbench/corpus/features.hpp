#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bailbench/common/diagnostics.hpp"
#include "bailbench/corpus/case_record.hpp"

namespace bailbench {

enum class AgeGroup { Under18, A18to30, A30to50, A50to65, A65plus };

enum class CrimeCategory {
  Theft,
  Murder,
  Rape,
  Fraud,
  Drug,
  Assault,
  Kidnapping,
  DomesticViolence,
  WhiteCollar,
  SexualAssault,
  Other,
};

inline constexpr AgeGroup kAllAgeGroups[] = {AgeGroup::Under18, AgeGroup::A18to30, AgeGroup::A30to50,
                                             AgeGroup::A50to65, AgeGroup::A65plus};
inline constexpr CrimeCategory kAllCrimeCategories[] = {
    CrimeCategory::Theft,   CrimeCategory::Murder,     CrimeCategory::Rape,
    CrimeCategory::Fraud,   CrimeCategory::Drug,       CrimeCategory::Assault,
    CrimeCategory::Kidnapping, CrimeCategory::DomesticViolence, CrimeCategory::WhiteCollar,
    CrimeCategory::SexualAssault, CrimeCategory::Other};

std::string_view to_string(AgeGroup g);
std::string_view to_string(CrimeCategory c);
std::optional<AgeGroup> parse_age_group(std::string_view s);
std::optional<CrimeCategory> parse_crime_category(std::string_view s);

// Boundaries [18,30), [30,50), [50,65), [65, inf).
AgeGroup age_group_for(int age);

struct DerivedFeatures {
  std::optional<long long> custody_days;
  std::optional<AgeGroup> age_group;
  CrimeCategory crime_category = CrimeCategory::Other;

  bool operator==(const DerivedFeatures&) const = default;
};

// Ordered (pattern -> category) rows; the first row whose pattern occurs in
// the text at a word start wins. Patterns are case-insensitive and may
// match a word prefix ("stole" matches "stolen").
class KeywordTable {
 public:
  struct Row {
    std::string pattern;
    CrimeCategory category;
  };

  // TSV: "pattern<TAB>Category"; '#' starts a comment line. A line
  // "# version: N" sets the version. Throws std::invalid_argument on
  // unknown categories or malformed rows.
  static KeywordTable parse_tsv(std::string_view tsv);
  static KeywordTable load(const std::filesystem::path& path);
  // The table shipped in core/data/crime_keywords.tsv.
  static const KeywordTable& builtin();

  CrimeCategory classify(std::string_view text) const;

  const std::vector<Row>& rows() const noexcept { return rows_; }
  const std::string& version() const noexcept { return version_; }

 private:
  std::vector<Row> rows_;
  std::string version_;
};

// Optional model-backed classifier: returns the model's free-text answer,
// throws on endpoint failure.
using LlmCrimeClassifier = std::function<std::string(std::string_view incident_details)>;

struct CrimeClassification {
  CrimeCategory category = CrimeCategory::Other;
  bool from_model = false;
  std::optional<std::string> warning;
};

// Maps a free-text model answer ("Domestic violence", "theft.") onto the enum.
std::optional<CrimeCategory> map_crime_answer(std::string_view answer);

class CrimeClassifier {
 public:
  explicit CrimeClassifier(KeywordTable table = KeywordTable::builtin(), LlmCrimeClassifier llm = {});

  // Throws PreconditionError when incident_details is blank.
  CrimeClassification classify(std::string_view incident_details) const;

  const KeywordTable& table() const noexcept { return table_; }

 private:
  KeywordTable table_;
  LlmCrimeClassifier llm_;
};

// Pure: equal inputs give equal outputs. Classifier warnings go to `diag`.
DerivedFeatures derive_features(const CaseRecord& record, const CrimeClassifier& classifier,
                                Diagnostics* diag = nullptr);

}  // namespace bailbench
