#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bailbench/corpus/case_record.hpp"
#include "bailbench/corpus/features.hpp"

namespace bailbench {

struct GroupRate {
  std::string group;
  std::size_t granted = 0;  // Granted, or Cancelled for cancellation applications
  std::size_t total = 0;
  double rate = 0.0;
  bool operator==(const GroupRate&) const = default;
};

struct GroupShare {
  std::string group;
  std::size_t count = 0;
  double share = 0.0;
  bool operator==(const GroupShare&) const = default;
};

struct HistogramBucket {
  std::string bucket;  // "0-29", ..., "730+" (days)
  std::size_t count = 0;
  bool operator==(const HistogramBucket&) const = default;
};

struct CustodySummary {
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  long long max = 0;
  std::vector<HistogramBucket> histogram;
  bool operator==(const CustodySummary&) const = default;
};

struct StatsReport {
  std::size_t total_records = 0;
  bool includes_withdrawn = false;
  std::vector<GroupShare> court_counts;  // sorted by court name; share of all records
  std::vector<GroupShare> bail_type_shares;
  GroupRate overall;
  std::vector<GroupRate> by_bail_type;
  std::vector<GroupRate> by_age_group;
  std::vector<GroupRate> by_past_record;  // "no_record", "past_record"
  std::vector<GroupRate> by_statute;      // one row per citation occurrence, keyed "Section <id> <act>"
  std::vector<GroupRate> by_crime_category;
  std::optional<CustodySummary> custody;
  std::size_t withdrawn = 0;
  double withdrawal_rate = 0.0;

  bool operator==(const StatsReport&) const = default;
};

struct StatsOptions {
  bool include_withdrawn = false;
  unsigned jobs = 1;
};

// Mergeable partial counters; shards can be accumulated independently and
// combined with merge() before finish().
class StatsAccumulator {
 public:
  explicit StatsAccumulator(StatsOptions options = {}) : options_(options) {}

  void add(const CaseRecord& record, const DerivedFeatures& features);
  void merge(const StatsAccumulator& other);
  // Throws PreconditionError when no record was added.
  StatsReport finish() const;

 private:
  struct Counter {
    std::size_t granted = 0;
    std::size_t total = 0;
  };

  StatsOptions options_;
  std::size_t total_ = 0;
  std::size_t withdrawn_ = 0;
  std::map<std::string, std::size_t> courts_;
  std::map<int, std::size_t> bail_types_;
  Counter overall_;
  std::map<int, Counter> by_bail_type_;
  std::map<int, Counter> by_age_group_;
  std::map<int, Counter> by_past_record_;
  std::map<std::string, Counter> by_statute_;
  std::map<int, Counter> by_crime_;
  std::vector<long long> custody_;
};

// "Grant" analogue: Granted for regular/anticipatory, Cancelled for cancellation.
bool counts_as_grant(Outcome outcome);

// records[i] pairs with features[i]. Throws PreconditionError on an empty
// corpus or mismatched lengths.
StatsReport compute_stats(std::span<const CaseRecord> records, std::span<const DerivedFeatures> features,
                          StatsOptions options = {});

// Serialization. JSON is a single document with deterministic key order; CSV
// writes one file per statistic family (see docs/formats.md).
nlohmann::ordered_json stats_to_json(const StatsReport& report);
StatsReport stats_from_json(const nlohmann::json& doc);
std::map<std::string, std::string> stats_to_csv_tables(const StatsReport& report);

void emit_stats_json(const StatsReport& report, const std::filesystem::path& file);
void emit_stats_csv(const StatsReport& report, const std::filesystem::path& directory);

}  // namespace bailbench
