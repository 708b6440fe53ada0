#include <gtest/gtest.h>

#include <random>

#include "bailbench/common/errors.hpp"
#include "bailbench/common/template.hpp"
#include "bailbench/statutes/context.hpp"
#include "bailbench/statutes/index.hpp"
#include "test_support.hpp"

namespace bailbench {
namespace {

const StatuteIndex& fixture_index() {
  static const StatuteIndex index = ingest_statutes(testing::fixture("statutes"));
  return index;
}

TEST(StatuteFile, HeadersAndBodies) {
  Diagnostics diag;
  const auto sections = parse_statute_file(
      "preamble ignored\n## IPC | 34 | Common intention\nWhen a criminal act is done by several persons.\n\n"
      "## IPC | 35 |\n\n## IPC | 36 | Effect\nWhere an act is done.\n",
      "ipc.txt", &diag);
  ASSERT_EQ(sections.size(), 2u);
  EXPECT_EQ(sections[0].section_id, "34");
  EXPECT_EQ(sections[0].heading, "Common intention");
  EXPECT_EQ(sections[0].body, "When a criminal act is done by several persons.");
  EXPECT_EQ(sections[1].section_id, "36");
  EXPECT_EQ(diag.size(), 1u);  // empty body of 35
}

TEST(Index, IngestsFixtureDirectory) {
  EXPECT_EQ(fixture_index().size(), 13u);
  EXPECT_NE(fixture_index().find("IPC", "302"), nullptr);
}

TEST(Index, ExactFuzzyAndMiss) {
  const auto& idx = fixture_index();
  const auto exact = idx.resolve({"438", "Cr.P.C."});
  EXPECT_EQ(exact.status, Resolution::Exact);
  ASSERT_NE(exact.section, nullptr);
  EXPECT_EQ(exact.section->act, "CrPC");

  const auto fuzzy = idx.resolve({"506(1)(b)", "Indian Penal Code"});
  EXPECT_EQ(fuzzy.status, Resolution::Fuzzy);
  ASSERT_NE(fuzzy.section, nullptr);
  EXPECT_EQ(fuzzy.section->section_id, "506");

  EXPECT_EQ(idx.resolve({"999", "IPC"}).status, Resolution::Miss);
  EXPECT_EQ(idx.resolve({"302", "Imaginary Act"}).section, nullptr);
}

TEST(Index, NormalizationAndAliases) {
  EXPECT_EQ(normalize_statute_token("Cr. P. C."), "crpc");
  const auto aliases = ActAliases::parse_tsv("# c\nPenal Code\tIPC\n");
  EXPECT_EQ(aliases.canonical_key("penal code"), "ipc");
  EXPECT_EQ(aliases.canonical_key("Arms Act"), "armsact");
  EXPECT_THROW(ActAliases::parse_tsv("no tab here\n"), std::invalid_argument);
}

TEST(Index, LastInsertWinsWithWarning) {
  StatuteIndex idx;
  Diagnostics diag;
  idx.insert({"IPC", "1", std::nullopt, "first", "a"}, &diag);
  idx.insert({"I.P.C.", "1", std::nullopt, "second", "b"}, &diag);
  EXPECT_EQ(idx.size(), 1u);
  EXPECT_EQ(idx.find("IPC", "1")->body, "second");
  EXPECT_EQ(diag.size(), 1u);
}

TEST(Index, SearchActRanksByOverlap) {
  const auto hits = fixture_index().search_act("IPC", "cheating property dishonestly", 2);
  ASSERT_FALSE(hits.empty());
  EXPECT_EQ(hits.front()->section_id, "420");
}

TEST(Index, SaveLoadRoundTrip) {
  const auto dir = testing::scratch_dir("statute-index");
  fixture_index().save(dir / "index.json");
  const auto loaded = StatuteIndex::load(dir / "index.json");
  EXPECT_EQ(loaded.to_json(), fixture_index().to_json());
  EXPECT_THROW(ingest_statutes(dir / "missing"), IoError);
}

TEST(Context, ResolvedSectionsInCitationOrder) {
  const std::vector<StatuteCitation> cites = {{"439", "CrPC"}, {"999", "IPC"}, {"379", "IPC"}, {"439", "CrPC"}};
  const auto block = assemble_context(cites, fixture_index(), 4096);
  ASSERT_EQ(block.entries.size(), 4u);
  EXPECT_EQ(block.entries[0].status, Resolution::Exact);
  EXPECT_EQ(block.entries[1].status, Resolution::Miss);
  EXPECT_TRUE(block.entries[1].text.empty());
  EXPECT_TRUE(block.entries[3].shared);
  EXPECT_TRUE(block.entries[3].text.empty());
  EXPECT_EQ(block.omitted, 0u);
  EXPECT_NE(block.render().find("Section 379 IPC"), std::string::npos);
}

TEST(Context, TightBudgetTruncatesThenOmits) {
  const std::vector<StatuteCitation> cites = {{"438", "CrPC"}, {"439", "CrPC"}, {"302", "IPC"}};
  const auto full = assemble_context(cites, fixture_index(), 100000);
  const auto tight = assemble_context(cites, fixture_index(), full.entries[0].tokens + 30);
  EXPECT_LE(tight.token_estimate, full.entries[0].tokens + 30);
  ASSERT_GE(tight.entries.size(), 1u);
  EXPECT_EQ(tight.entries[0], full.entries[0]);
  EXPECT_GT(tight.omitted, 0u);
  if (tight.entries.size() > 1) EXPECT_TRUE(tight.entries.back().truncated);
  EXPECT_THROW(assemble_context(cites, fixture_index(), 0), PreconditionError);
}

TEST(Context, BudgetAndOrderProperty) {
  std::vector<StatuteCitation> pool;
  for (const auto* s : fixture_index().sections()) pool.push_back({s->section_id, s->act});
  pool.push_back({"438(2)", "CrPC"});
  pool.push_back({"1", "Unknown Act"});
  std::mt19937_64 rng(99);
  for (int t = 0; t < 300; ++t) {
    std::vector<StatuteCitation> cites;
    const int n = std::uniform_int_distribution<int>(0, 10)(rng);
    for (int i = 0; i < n; ++i) cites.push_back(pool[rng() % pool.size()]);
    const auto budget = std::uniform_int_distribution<std::size_t>(1, 500)(rng);
    const auto block = assemble_context(cites, fixture_index(), budget);
    ASSERT_LE(block.token_estimate, budget);
    ASSERT_EQ(block.entries.size() + block.omitted, cites.size());
    std::size_t sum = 0;
    for (std::size_t i = 0; i < block.entries.size(); ++i) {
      EXPECT_EQ(block.entries[i].citation, cites[i]);
      EXPECT_EQ(block.entries[i].tokens, estimate_tokens(render_entry(block.entries[i])));
      sum += block.entries[i].tokens;
    }
    EXPECT_EQ(sum, block.token_estimate);
  }
}

}  // namespace
}  // namespace bailbench
