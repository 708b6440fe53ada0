#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bailbench/common/date.hpp"

namespace bailbench {

enum class BailType { Regular, Anticipatory, Cancellation };
enum class Outcome { Granted, NotGranted, Cancelled, NotCancelled };

std::string_view to_string(BailType t);
std::string_view to_string(Outcome o);
std::optional<BailType> parse_bail_type(std::string_view s);
std::optional<Outcome> parse_outcome(std::string_view s);

// The phrase a judgment uses for an outcome: "Bail granted", "Bail not cancelled", ...
std::string_view outcome_phrase(Outcome o);

// Cancelled/NotCancelled belong to cancellation applications; the other
// two belong to regular and anticipatory applications.
bool outcome_matches(BailType type, Outcome outcome);

struct StatuteCitation {
  std::string section;  // "438", "294(a)", "41A(b)(ii)"
  std::string act;      // "CrPC", "IPC", "Arms Act"

  // "Section 438 CrPC"
  std::string to_string() const;
  auto operator<=>(const StatuteCitation&) const = default;
};

struct CaseRecord {
  std::string case_id;
  std::string court;
  BailType bail_type = BailType::Regular;
  bool is_withdrawal = false;
  std::optional<int> age;
  std::optional<std::string> health_issues;
  bool has_past_record = false;
  std::vector<StatuteCitation> statutes;
  std::vector<std::string> precedents;
  std::string incident_details;
  std::string arguments_supporting;
  std::string arguments_opposing;
  Outcome outcome = Outcome::Granted;
  std::optional<std::string> bail_conditions;
  std::string reasoning;
  std::optional<Date> date_of_arrest;
  std::optional<Date> date_of_judgment;

  bool operator==(const CaseRecord&) const = default;
};

// Human-readable descriptions of every broken invariant; empty when valid.
std::vector<std::string> validate(const CaseRecord& record);

void to_json(nlohmann::json& j, const StatuteCitation& c);
void from_json(const nlohmann::json& j, StatuteCitation& c);
void to_json(nlohmann::json& j, const CaseRecord& r);
// Throws nlohmann::json::exception or std::invalid_argument on schema errors.
void from_json(const nlohmann::json& j, CaseRecord& r);

}  // namespace bailbench
