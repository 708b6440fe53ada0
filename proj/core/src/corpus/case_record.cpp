#include "bailbench/corpus/case_record.hpp"

#include <stdexcept>

#include "bailbench/common/text.hpp"

namespace bailbench {

std::string_view to_string(BailType t) {
  switch (t) {
    case BailType::Regular: return "Regular";
    case BailType::Anticipatory: return "Anticipatory";
    case BailType::Cancellation: return "Cancellation";
  }
  return "?";
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Granted: return "Granted";
    case Outcome::NotGranted: return "NotGranted";
    case Outcome::Cancelled: return "Cancelled";
    case Outcome::NotCancelled: return "NotCancelled";
  }
  return "?";
}

std::optional<BailType> parse_bail_type(std::string_view s) {
  for (auto t : {BailType::Regular, BailType::Anticipatory, BailType::Cancellation}) {
    if (text::iequals(s, to_string(t))) return t;
  }
  return std::nullopt;
}

std::optional<Outcome> parse_outcome(std::string_view s) {
  for (auto o : {Outcome::Granted, Outcome::NotGranted, Outcome::Cancelled, Outcome::NotCancelled}) {
    if (text::iequals(s, to_string(o))) return o;
  }
  return std::nullopt;
}

std::string_view outcome_phrase(Outcome o) {
  switch (o) {
    case Outcome::Granted: return "Bail granted";
    case Outcome::NotGranted: return "Bail not granted";
    case Outcome::Cancelled: return "Bail cancelled";
    case Outcome::NotCancelled: return "Bail not cancelled";
  }
  return "?";
}

bool outcome_matches(BailType type, Outcome outcome) {
  const bool cancellation_outcome = outcome == Outcome::Cancelled || outcome == Outcome::NotCancelled;
  return cancellation_outcome == (type == BailType::Cancellation);
}

std::string StatuteCitation::to_string() const { return "Section " + section + " " + act; }

std::vector<std::string> validate(const CaseRecord& r) {
  std::vector<std::string> problems;
  if (!outcome_matches(r.bail_type, r.outcome)) {
    problems.push_back("outcome " + std::string(to_string(r.outcome)) + " does not belong to bail type " +
                       std::string(to_string(r.bail_type)));
  }
  if (r.age && (*r.age < 1 || *r.age > 150)) {
    problems.push_back("age " + std::to_string(*r.age) + " outside [1, 150]");
  }
  if (r.date_of_arrest && r.date_of_judgment && days_between(*r.date_of_arrest, *r.date_of_judgment) < 0) {
    problems.push_back("date_of_judgment precedes date_of_arrest");
  }
  if (text::trim(r.incident_details).empty()) problems.push_back("incident_details empty");
  if (r.statutes.empty()) problems.push_back("statutes empty");
  for (const auto& s : r.statutes) {
    if (s.section.empty() || s.act.empty()) problems.push_back("statute citation with empty section or act");
  }
  if (text::trim(r.reasoning).empty()) problems.push_back("reasoning empty");
  return problems;
}

void to_json(nlohmann::json& j, const StatuteCitation& c) {
  j = nlohmann::ordered_json{{"section", c.section}, {"act", c.act}};
}

void from_json(const nlohmann::json& j, StatuteCitation& c) {
  j.at("section").get_to(c.section);
  j.at("act").get_to(c.act);
}

namespace {

template <class T>
nlohmann::json opt(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json opt_date(const std::optional<Date>& d) {
  return d ? nlohmann::json(to_iso(*d)) : nlohmann::json(nullptr);
}

std::optional<Date> read_date(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  auto d = parse_iso_date(it->get<std::string>());
  if (!d) throw std::invalid_argument(std::string(key) + " is not an ISO-8601 date");
  return d;
}

template <class T>
std::optional<T> read_opt(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

}  // namespace

void to_json(nlohmann::json& j, const CaseRecord& r) {
  nlohmann::ordered_json o;
  o["case_id"] = r.case_id;
  o["court"] = r.court;
  o["bail_type"] = to_string(r.bail_type);
  o["is_withdrawal"] = r.is_withdrawal;
  o["age"] = opt(r.age);
  o["health_issues"] = opt(r.health_issues);
  o["has_past_record"] = r.has_past_record;
  o["statutes"] = nlohmann::ordered_json::array();
  for (const auto& s : r.statutes) o["statutes"].push_back({{"section", s.section}, {"act", s.act}});
  o["precedents"] = r.precedents;
  o["incident_details"] = r.incident_details;
  o["arguments_supporting"] = r.arguments_supporting;
  o["arguments_opposing"] = r.arguments_opposing;
  o["outcome"] = to_string(r.outcome);
  o["bail_conditions"] = opt(r.bail_conditions);
  o["reasoning"] = r.reasoning;
  o["date_of_arrest"] = opt_date(r.date_of_arrest);
  o["date_of_judgment"] = opt_date(r.date_of_judgment);
  j = o;
}

void from_json(const nlohmann::json& j, CaseRecord& r) {
  if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
  r = CaseRecord{};
  j.at("case_id").get_to(r.case_id);
  r.court = j.value("court", std::string{});
  auto bt = parse_bail_type(j.at("bail_type").get<std::string>());
  if (!bt) throw std::invalid_argument("unknown bail_type");
  r.bail_type = *bt;
  r.is_withdrawal = j.value("is_withdrawal", false);
  r.age = read_opt<int>(j, "age");
  r.health_issues = read_opt<std::string>(j, "health_issues");
  r.has_past_record = j.value("has_past_record", false);
  r.statutes = j.at("statutes").get<std::vector<StatuteCitation>>();
  r.precedents = j.value("precedents", std::vector<std::string>{});
  j.at("incident_details").get_to(r.incident_details);
  r.arguments_supporting = j.value("arguments_supporting", std::string{});
  r.arguments_opposing = j.value("arguments_opposing", std::string{});
  auto oc = parse_outcome(j.at("outcome").get<std::string>());
  if (!oc) throw std::invalid_argument("unknown outcome");
  r.outcome = *oc;
  r.bail_conditions = read_opt<std::string>(j, "bail_conditions");
  j.at("reasoning").get_to(r.reasoning);
  r.date_of_arrest = read_date(j, "date_of_arrest");
  r.date_of_judgment = read_date(j, "date_of_judgment");
}

}  // namespace bailbench
