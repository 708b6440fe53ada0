#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bailbench/common/diagnostics.hpp"
#include "bailbench/corpus/case_record.hpp"

namespace bailbench {

struct StatuteSection {
  std::string act;
  std::string section_id;
  std::optional<std::string> heading;
  std::string body;
  std::string source;  // file name and line of the header

  bool operator==(const StatuteSection&) const = default;
};

void to_json(nlohmann::json& j, const StatuteSection& s);
void from_json(const nlohmann::json& j, StatuteSection& s);

// Case-folded with spaces and periods removed: "Cr.P.C." -> "crpc".
std::string normalize_statute_token(std::string_view s);

// Maps act-name variants onto one canonical name. Lookups compare
// normalized forms; an act without an alias maps to itself.
class ActAliases {
 public:
  // "alias<TAB>canonical" rows; '#' comment lines. Throws
  // std::invalid_argument on a row without a tab.
  static ActAliases parse_tsv(std::string_view tsv);
  static const ActAliases& builtin();

  void add(std::string_view alias, std::string_view canonical);
  // Normalized canonical key for an act name.
  std::string canonical_key(std::string_view act) const;
  std::size_t size() const noexcept { return map_.size(); }

 private:
  std::map<std::string, std::string, std::less<>> map_;  // normalized alias -> normalized canonical
};

enum class Resolution { Exact, Fuzzy, Miss };
std::string_view to_string(Resolution r);

struct ResolvedCitation {
  Resolution status = Resolution::Miss;
  const StatuteSection* section = nullptr;  // points into the index; null on Miss
};

// Sections keyed by normalized (act, section id). Immutable once built, so
// concurrent lookups are safe.
class StatuteIndex {
 public:
  explicit StatuteIndex(ActAliases aliases = ActAliases::builtin());

  // Replaces an existing entry with the same key (last wins) and warns.
  void insert(StatuteSection section, Diagnostics* diag = nullptr);

  std::size_t size() const noexcept { return sections_.size(); }
  bool empty() const noexcept { return sections_.empty(); }
  // In key order.
  std::vector<const StatuteSection*> sections() const;

  const StatuteSection* find(std::string_view act, std::string_view section_id) const;

  // Exact key first; then parent sections by dropping trailing
  // parenthesized sub-clauses ("506(1)(b)" -> "506(1)" -> "506"), marked Fuzzy.
  ResolvedCitation resolve(const StatuteCitation& citation) const;

  // Sections of `act` ranked by keyword overlap with `query` (ties in key
  // order), for acts cited without a usable section number.
  std::vector<const StatuteSection*> search_act(std::string_view act, std::string_view query,
                                                std::size_t limit = 3) const;

  nlohmann::ordered_json to_json() const;
  static StatuteIndex from_json(const nlohmann::json& j, ActAliases aliases = ActAliases::builtin());
  void save(const std::filesystem::path& path) const;
  static StatuteIndex load(const std::filesystem::path& path, ActAliases aliases = ActAliases::builtin());

 private:
  using Key = std::pair<std::string, std::string>;
  Key key_for(std::string_view act, std::string_view section_id) const;

  ActAliases aliases_;
  std::map<Key, StatuteSection> sections_;
};

// Sections of one statute file. Header lines look like
//   ## IPC | 34 | Acts done by several persons in furtherance of common intention
// and the body runs to the next header. Headers with an empty body are
// skipped with a warning.
std::vector<StatuteSection> parse_statute_file(std::string_view content, std::string_view source,
                                               Diagnostics* diag = nullptr);

// Every *.txt file of `dir` in name order. A file without sections is a
// per-file error and ingestion continues. Throws IoError when `dir` is not
// a readable directory.
StatuteIndex ingest_statutes(const std::filesystem::path& dir, Diagnostics* diag = nullptr,
                             ActAliases aliases = ActAliases::builtin());

}  // namespace bailbench
