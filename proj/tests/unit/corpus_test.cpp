#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "bailbench/common/errors.hpp"
#include "bailbench/common/io.hpp"
#include "bailbench/corpus/corpus_io.hpp"
#include "bailbench/corpus/features.hpp"
#include "bailbench/corpus/stats.hpp"
#include "test_support.hpp"

namespace bailbench {
namespace {

std::vector<DerivedFeatures> features_for(const std::vector<CaseRecord>& records) {
  const CrimeClassifier classifier;
  std::vector<DerivedFeatures> out;
  for (const auto& r : records) out.push_back(derive_features(r, classifier));
  return out;
}

const GroupRate* find_group(const std::vector<GroupRate>& rows, std::string_view name) {
  for (const auto& r : rows)
    if (r.group == name) return &r;
  return nullptr;
}

TEST(CaseRecordJson, RandomRecordsRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto r = testing::random_case_record(rng, "j-" + std::to_string(i));
    ASSERT_TRUE(validate(r).empty()) << r.case_id;
    const nlohmann::json j = r;
    EXPECT_EQ(j.get<CaseRecord>(), r);
    auto parsed = parse_record_line(j.dump());
    ASSERT_TRUE(std::holds_alternative<CaseRecord>(parsed));
    EXPECT_EQ(std::get<CaseRecord>(parsed), r);
  }
}

TEST(CaseRecordJson, RejectsSchemaViolations) {
  EXPECT_TRUE(std::holds_alternative<std::string>(parse_record_line("{not json")));
  EXPECT_TRUE(std::holds_alternative<std::string>(parse_record_line(R"({"case_id": "x"})")));
}

TEST(CaseRecord, ValidateFlagsMismatchedOutcome) {
  std::mt19937_64 rng(3);
  auto r = testing::random_case_record(rng, "v");
  r.bail_type = BailType::Regular;
  r.outcome = Outcome::Cancelled;
  EXPECT_FALSE(validate(r).empty());
}

TEST(CorpusReader, ReportsBadLinesAndKeepsGoodOnes) {
  const auto dir = testing::scratch_dir("corpus-reader");
  std::mt19937_64 rng(5);
  const auto a = testing::random_case_record(rng, "a");
  const auto b = testing::random_case_record(rng, "b");
  write_text_file(dir / "c.jsonl", nlohmann::json(a).dump() + "\n\ngarbage\n" + nlohmann::json(b).dump() + "\n");
  const auto load = load_corpus(dir / "c.jsonl");
  ASSERT_EQ(load.records.size(), 2u);
  EXPECT_EQ(load.records[0], a);
  EXPECT_EQ(load.records[1], b);
  ASSERT_EQ(load.errors.size(), 1u);
  EXPECT_EQ(load.errors[0].line, 3u);
}

TEST(CorpusIo, WriteThenLoadIsIdentity) {
  const auto dir = testing::scratch_dir("corpus-io");
  std::mt19937_64 rng(17);
  std::vector<CaseRecord> records;
  for (int i = 0; i < 20; ++i) records.push_back(testing::random_case_record(rng, "w" + std::to_string(i)));
  write_jsonl(dir / "out.jsonl", records);
  EXPECT_EQ(load_corpus(dir / "out.jsonl").records, records);
}

TEST(Features, AgeGroupBoundaries) {
  EXPECT_EQ(age_group_for(17), AgeGroup::Under18);
  EXPECT_EQ(age_group_for(18), AgeGroup::A18to30);
  EXPECT_EQ(age_group_for(29), AgeGroup::A18to30);
  EXPECT_EQ(age_group_for(30), AgeGroup::A30to50);
  EXPECT_EQ(age_group_for(50), AgeGroup::A50to65);
  EXPECT_EQ(age_group_for(65), AgeGroup::A65plus);
}

TEST(Features, KeywordClassifierFirstRowWins) {
  const auto table = KeywordTable::parse_tsv("# version: 2\nmurder\tMurder\nstole\tTheft\n");
  EXPECT_EQ(table.version(), "2");
  EXPECT_EQ(table.classify("He stole a phone and committed murder"), CrimeCategory::Murder);
  EXPECT_EQ(table.classify("The phone was stolen"), CrimeCategory::Theft);
  EXPECT_EQ(table.classify("nothing relevant"), CrimeCategory::Other);
  EXPECT_THROW(KeywordTable::parse_tsv("x\tNotACategory\n"), std::invalid_argument);
}

TEST(Features, LlmClassifierFallsBackOnUnmappableAnswer) {
  CrimeClassifier llm(KeywordTable::builtin(), [](std::string_view) { return std::string("no idea"); });
  const auto c = llm.classify("The accused allegedly stole a mobile phone");
  EXPECT_FALSE(c.from_model);
  EXPECT_TRUE(c.warning.has_value());
  EXPECT_EQ(map_crime_answer("Domestic violence."), CrimeCategory::DomesticViolence);
}

TEST(Features, CustodyDaysFromDates) {
  const auto load = load_corpus(testing::fixture("corpus4.jsonl"));
  const auto f = features_for(load.records);
  ASSERT_TRUE(f[0].custody_days);
  EXPECT_EQ(*f[0].custody_days, 60);
  EXPECT_EQ(f[0].crime_category, CrimeCategory::Theft);
  EXPECT_EQ(derive_features(load.records[0], CrimeClassifier{}), f[0]);
}

TEST(Stats, FourRecordCorpus) {
  const auto load = load_corpus(testing::fixture("corpus4.jsonl"));
  ASSERT_EQ(load.records.size(), 4u);
  const auto rep = compute_stats(load.records, features_for(load.records));
  EXPECT_DOUBLE_EQ(rep.overall.rate, 0.75);
  const auto* regular = find_group(rep.by_bail_type, "Regular");
  ASSERT_NE(regular, nullptr);
  EXPECT_EQ(regular->granted, 2u);
  EXPECT_EQ(regular->total, 3u);
}

TEST(Stats, HandComputedFortyRecordCorpus) {
  const auto load = load_corpus(testing::fixture("stats40.jsonl"));
  ASSERT_TRUE(load.errors.empty());
  ASSERT_EQ(load.records.size(), 40u);
  const auto rep = compute_stats(load.records, features_for(load.records));

  EXPECT_EQ(rep.overall.granted, 24u);
  EXPECT_EQ(rep.overall.total, 40u);
  EXPECT_DOUBLE_EQ(rep.overall.rate, 0.6);

  const std::vector<std::tuple<std::string, std::size_t, std::size_t>> types = {
      {"Regular", 15, 24}, {"Anticipatory", 8, 12}, {"Cancellation", 1, 4}};
  for (const auto& [name, g, t] : types) {
    const auto* row = find_group(rep.by_bail_type, name);
    ASSERT_NE(row, nullptr) << name;
    EXPECT_EQ(row->granted, g) << name;
    EXPECT_EQ(row->total, t) << name;
  }
  const std::vector<std::tuple<std::string, std::size_t, std::size_t>> ages = {
      {"A18to30", 14, 16}, {"A30to50", 6, 13}, {"A50to65", 4, 7}, {"A65plus", 0, 2}};
  std::size_t aged = 0;
  for (const auto& [name, g, t] : ages) {
    const auto* row = find_group(rep.by_age_group, name);
    ASSERT_NE(row, nullptr) << name;
    EXPECT_EQ(row->granted, g) << name;
    EXPECT_EQ(row->total, t) << name;
    aged += row->total;
  }
  EXPECT_EQ(aged, 38u);  // two records without an age

  EXPECT_EQ(find_group(rep.by_past_record, "past_record")->granted, 4u);
  EXPECT_EQ(find_group(rep.by_past_record, "past_record")->total, 11u);
  EXPECT_EQ(find_group(rep.by_past_record, "no_record")->granted, 20u);
  EXPECT_EQ(find_group(rep.by_past_record, "no_record")->total, 29u);

  double share = 0.0;
  for (const auto& s : rep.bail_type_shares) share += s.share;
  EXPECT_NEAR(share, 1.0, 1e-12);
}

TEST(Stats, WithdrawnRecordsExcludedByDefault) {
  auto load = load_corpus(testing::fixture("corpus4.jsonl"));
  load.records[3].is_withdrawal = true;
  const auto f = features_for(load.records);
  const auto without = compute_stats(load.records, f);
  EXPECT_EQ(without.overall.total, 3u);
  EXPECT_EQ(without.withdrawn, 1u);
  const auto with = compute_stats(load.records, f, {.include_withdrawn = true});
  EXPECT_EQ(with.overall.total, 4u);
}

TEST(Stats, ShardedMergeEqualsSinglePass) {
  std::mt19937_64 rng(23);
  std::vector<CaseRecord> records;
  for (int i = 0; i < 60; ++i) records.push_back(testing::random_case_record(rng, "m" + std::to_string(i)));
  const auto f = features_for(records);
  StatsAccumulator a, b;
  for (std::size_t i = 0; i < records.size(); ++i) (i % 3 ? a : b).add(records[i], f[i]);
  a.merge(b);
  EXPECT_EQ(a.finish(), compute_stats(records, f));
}

TEST(Stats, JsonRoundTripAndPreconditions) {
  const auto load = load_corpus(testing::fixture("stats40.jsonl"));
  const auto rep = compute_stats(load.records, features_for(load.records));
  EXPECT_EQ(stats_from_json(nlohmann::json::parse(stats_to_json(rep).dump())), rep);
  EXPECT_THROW(compute_stats({}, {}), PreconditionError);
}

}  // namespace
}  // namespace bailbench
