#include <charconv>
#include <stdexcept>

#include "bailbench/common/io.hpp"
#include "bailbench/corpus/stats.hpp"

namespace bailbench {

namespace {

using ojson = nlohmann::ordered_json;

ojson rates_json(const std::vector<GroupRate>& rows) {
  ojson arr = ojson::array();
  for (const auto& r : rows) arr.push_back({{"group", r.group}, {"granted", r.granted}, {"total", r.total}, {"rate", r.rate}});
  return arr;
}

ojson shares_json(const std::vector<GroupShare>& rows) {
  ojson arr = ojson::array();
  for (const auto& r : rows) arr.push_back({{"group", r.group}, {"count", r.count}, {"share", r.share}});
  return arr;
}

GroupRate rate_from(const nlohmann::json& j) {
  return {j.at("group").get<std::string>(), j.at("granted").get<std::size_t>(), j.at("total").get<std::size_t>(),
          j.at("rate").get<double>()};
}

std::vector<GroupRate> rates_from(const nlohmann::json& arr) {
  std::vector<GroupRate> out;
  for (const auto& j : arr) out.push_back(rate_from(j));
  return out;
}

std::vector<GroupShare> shares_from(const nlohmann::json& arr) {
  std::vector<GroupShare> out;
  for (const auto& j : arr)
    out.push_back({j.at("group").get<std::string>(), j.at("count").get<std::size_t>(), j.at("share").get<double>()});
  return out;
}

std::string num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string rates_csv(const std::vector<GroupRate>& rows) {
  std::string out = "group,granted,total,rate\n";
  for (const auto& r : rows) {
    out += csv_field(r.group) + "," + std::to_string(r.granted) + "," + std::to_string(r.total) + "," + num(r.rate) + "\n";
  }
  return out;
}

std::string shares_csv(std::string_view key, const std::vector<GroupShare>& rows) {
  std::string out = std::string(key) + ",count,share\n";
  for (const auto& r : rows) out += csv_field(r.group) + "," + std::to_string(r.count) + "," + num(r.share) + "\n";
  return out;
}

}  // namespace

nlohmann::ordered_json stats_to_json(const StatsReport& r) {
  ojson doc;
  doc["schema"] = "bailbench.stats/1";
  doc["total_records"] = r.total_records;
  doc["includes_withdrawn"] = r.includes_withdrawn;
  doc["court_counts"] = shares_json(r.court_counts);
  doc["bail_type_shares"] = shares_json(r.bail_type_shares);
  doc["grant_rate"] = {{"overall", rates_json({r.overall})[0]},
                       {"by_bail_type", rates_json(r.by_bail_type)},
                       {"by_age_group", rates_json(r.by_age_group)},
                       {"by_past_record", rates_json(r.by_past_record)},
                       {"by_statute", rates_json(r.by_statute)},
                       {"by_crime_category", rates_json(r.by_crime_category)}};
  if (r.custody) {
    ojson hist = ojson::array();
    for (const auto& b : r.custody->histogram) hist.push_back({{"bucket", b.bucket}, {"count", b.count}});
    doc["custody"] = {{"count", r.custody->count},
                      {"mean", r.custody->mean},
                      {"median", r.custody->median},
                      {"max", r.custody->max},
                      {"histogram", hist}};
  } else {
    doc["custody"] = nullptr;
  }
  doc["withdrawal"] = {{"withdrawn", r.withdrawn}, {"total", r.total_records}, {"rate", r.withdrawal_rate}};
  return doc;
}

StatsReport stats_from_json(const nlohmann::json& doc) {
  StatsReport r;
  r.total_records = doc.at("total_records").get<std::size_t>();
  r.includes_withdrawn = doc.at("includes_withdrawn").get<bool>();
  r.court_counts = shares_from(doc.at("court_counts"));
  r.bail_type_shares = shares_from(doc.at("bail_type_shares"));
  const auto& g = doc.at("grant_rate");
  r.overall = rate_from(g.at("overall"));
  r.by_bail_type = rates_from(g.at("by_bail_type"));
  r.by_age_group = rates_from(g.at("by_age_group"));
  r.by_past_record = rates_from(g.at("by_past_record"));
  r.by_statute = rates_from(g.at("by_statute"));
  r.by_crime_category = rates_from(g.at("by_crime_category"));
  if (const auto& c = doc.at("custody"); !c.is_null()) {
    CustodySummary cs;
    cs.count = c.at("count").get<std::size_t>();
    cs.mean = c.at("mean").get<double>();
    cs.median = c.at("median").get<double>();
    cs.max = c.at("max").get<long long>();
    for (const auto& b : c.at("histogram")) cs.histogram.push_back({b.at("bucket").get<std::string>(), b.at("count").get<std::size_t>()});
    r.custody = cs;
  }
  r.withdrawn = doc.at("withdrawal").at("withdrawn").get<std::size_t>();
  r.withdrawal_rate = doc.at("withdrawal").at("rate").get<double>();
  return r;
}

std::map<std::string, std::string> stats_to_csv_tables(const StatsReport& r) {
  std::map<std::string, std::string> files;
  files["courts.csv"] = shares_csv("court", r.court_counts);
  files["bail_type_shares.csv"] = shares_csv("bail_type", r.bail_type_shares);
  files["grant_rate_overall.csv"] = rates_csv({r.overall});
  files["grant_rate_by_bail_type.csv"] = rates_csv(r.by_bail_type);
  files["grant_rate_by_age_group.csv"] = rates_csv(r.by_age_group);
  files["grant_rate_by_past_record.csv"] = rates_csv(r.by_past_record);
  files["grant_rate_by_statute.csv"] = rates_csv(r.by_statute);
  files["grant_rate_by_crime_category.csv"] = rates_csv(r.by_crime_category);
  std::string summary = "count,mean,median,max\n";
  std::string hist = "bucket,count\n";
  if (r.custody) {
    summary += std::to_string(r.custody->count) + "," + num(r.custody->mean) + "," + num(r.custody->median) + "," +
               std::to_string(r.custody->max) + "\n";
    for (const auto& b : r.custody->histogram) hist += b.bucket + "," + std::to_string(b.count) + "\n";
  }
  files["custody_summary.csv"] = summary;
  files["custody_histogram.csv"] = hist;
  files["withdrawal.csv"] = "withdrawn,total,rate\n" + std::to_string(r.withdrawn) + "," +
                            std::to_string(r.total_records) + "," + num(r.withdrawal_rate) + "\n";
  return files;
}

void emit_stats_json(const StatsReport& report, const std::filesystem::path& file) {
  write_text_file(file, dump_pretty(stats_to_json(report)));
}

void emit_stats_csv(const StatsReport& report, const std::filesystem::path& directory) {
  for (const auto& [name, content] : stats_to_csv_tables(report)) write_text_file(directory / name, content);
}

}  // namespace bailbench
