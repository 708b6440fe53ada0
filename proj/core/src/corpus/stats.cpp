#include "bailbench/corpus/stats.hpp"

#include <algorithm>
#include <thread>

#include "bailbench/common/errors.hpp"

namespace bailbench {

namespace {

constexpr struct {
  long long lo;
  long long hi;  // exclusive; -1 = open
  const char* label;
} kCustodyBuckets[] = {
    {0, 30, "0-29"}, {30, 90, "30-89"}, {90, 180, "90-179"},
    {180, 365, "180-364"}, {365, 730, "365-729"}, {730, -1, "730+"},
};

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

bool counts_as_grant(Outcome outcome) { return outcome == Outcome::Granted || outcome == Outcome::Cancelled; }

void StatsAccumulator::add(const CaseRecord& r, const DerivedFeatures& f) {
  ++total_;
  ++courts_[r.court];
  ++bail_types_[static_cast<int>(r.bail_type)];
  if (r.is_withdrawal) ++withdrawn_;
  if (f.custody_days) custody_.push_back(*f.custody_days);

  if (r.is_withdrawal && !options_.include_withdrawn) return;

  const bool grant = counts_as_grant(r.outcome);
  auto bump = [grant](Counter& c) {
    ++c.total;
    if (grant) ++c.granted;
  };
  bump(overall_);
  bump(by_bail_type_[static_cast<int>(r.bail_type)]);
  if (f.age_group) bump(by_age_group_[static_cast<int>(*f.age_group)]);
  bump(by_past_record_[r.has_past_record ? 1 : 0]);
  for (const auto& s : r.statutes) bump(by_statute_[s.to_string()]);
  bump(by_crime_[static_cast<int>(f.crime_category)]);
}

void StatsAccumulator::merge(const StatsAccumulator& o) {
  auto merge_counts = [](auto& into, const auto& from) {
    for (const auto& [k, v] : from) {
      auto& c = into[k];
      c.granted += v.granted;
      c.total += v.total;
    }
  };
  total_ += o.total_;
  withdrawn_ += o.withdrawn_;
  for (const auto& [k, v] : o.courts_) courts_[k] += v;
  for (const auto& [k, v] : o.bail_types_) bail_types_[k] += v;
  overall_.granted += o.overall_.granted;
  overall_.total += o.overall_.total;
  merge_counts(by_bail_type_, o.by_bail_type_);
  merge_counts(by_age_group_, o.by_age_group_);
  merge_counts(by_past_record_, o.by_past_record_);
  merge_counts(by_statute_, o.by_statute_);
  merge_counts(by_crime_, o.by_crime_);
  custody_.insert(custody_.end(), o.custody_.begin(), o.custody_.end());
}

StatsReport StatsAccumulator::finish() const {
  if (total_ == 0) throw PreconditionError("compute_stats: corpus is empty");

  StatsReport rep;
  rep.total_records = total_;
  rep.includes_withdrawn = options_.include_withdrawn;
  rep.withdrawn = withdrawn_;
  rep.withdrawal_rate = ratio(withdrawn_, total_);

  for (const auto& [court, n] : courts_) rep.court_counts.push_back({court, n, ratio(n, total_)});
  for (const auto& [bt, n] : bail_types_) {
    if (n > 0) rep.bail_type_shares.push_back({std::string(to_string(static_cast<BailType>(bt))), n, ratio(n, total_)});
  }

  auto cell = [](std::string key, const Counter& c) {
    return GroupRate{std::move(key), c.granted, c.total, ratio(c.granted, c.total)};
  };
  rep.overall = cell("all", overall_);
  for (const auto& [k, c] : by_bail_type_)
    if (c.total) rep.by_bail_type.push_back(cell(std::string(to_string(static_cast<BailType>(k))), c));
  for (const auto& [k, c] : by_age_group_)
    if (c.total) rep.by_age_group.push_back(cell(std::string(to_string(static_cast<AgeGroup>(k))), c));
  for (const auto& [k, c] : by_past_record_)
    if (c.total) rep.by_past_record.push_back(cell(k ? "past_record" : "no_record", c));
  for (const auto& [k, c] : by_statute_)
    if (c.total) rep.by_statute.push_back(cell(k, c));
  for (const auto& [k, c] : by_crime_)
    if (c.total) rep.by_crime_category.push_back(cell(std::string(to_string(static_cast<CrimeCategory>(k))), c));

  if (!custody_.empty()) {
    auto days = custody_;
    std::sort(days.begin(), days.end());
    CustodySummary cs;
    cs.count = days.size();
    long double sum = 0;
    for (auto d : days) sum += static_cast<long double>(d);
    cs.mean = static_cast<double>(sum / static_cast<long double>(days.size()));
    const auto mid = days.size() / 2;
    cs.median = days.size() % 2 ? static_cast<double>(days[mid])
                                : (static_cast<double>(days[mid - 1]) + static_cast<double>(days[mid])) / 2.0;
    cs.max = days.back();
    for (const auto& b : kCustodyBuckets) {
      auto n = std::count_if(days.begin(), days.end(),
                             [&](long long d) { return d >= b.lo && (b.hi < 0 || d < b.hi); });
      cs.histogram.push_back({b.label, static_cast<std::size_t>(n)});
    }
    rep.custody = std::move(cs);
  }
  return rep;
}

StatsReport compute_stats(std::span<const CaseRecord> records, std::span<const DerivedFeatures> features,
                          StatsOptions options) {
  if (records.size() != features.size()) {
    throw PreconditionError("compute_stats: records and features differ in length");
  }
  if (records.empty()) throw PreconditionError("compute_stats: corpus is empty");

  const std::size_t shards = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(1, records.size()));
  std::vector<StatsAccumulator> partial(shards, StatsAccumulator(options));
  auto work = [&](std::size_t shard) {
    for (std::size_t i = shard; i < records.size(); i += shards) partial[shard].add(records[i], features[i]);
  };
  if (shards == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t s = 0; s < shards; ++s) threads.emplace_back(work, s);
  }
  StatsAccumulator total(options);
  for (const auto& p : partial) total.merge(p);
  return total.finish();
}

}  // namespace bailbench
