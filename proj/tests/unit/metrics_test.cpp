#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "bailbench/common/errors.hpp"
#include "bailbench/corpus/corpus_io.hpp"
#include "bailbench/metrics/bertscore.hpp"
#include "bailbench/metrics/classification.hpp"
#include "bailbench/metrics/evaluation.hpp"
#include "bailbench/metrics/geval.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace bailbench {
namespace {

using Pairs = std::vector<std::pair<int, int>>;

TEST(Classification, HandExample) {
  const Pairs pairs = {{1, 1}, {1, 0}, {0, 0}, {0, 1}};
  const auto macro = classification_metrics(pairs, Averaging::Macro);
  EXPECT_DOUBLE_EQ(macro.accuracy, 0.5);
  EXPECT_DOUBLE_EQ(macro.precision, 0.5);
  EXPECT_DOUBLE_EQ(macro.recall, 0.5);
  EXPECT_DOUBLE_EQ(macro.f1, 0.5);
  EXPECT_EQ(macro.confusion, (Confusion{1, 1, 1, 1}));
}

TEST(Classification, ImbalancedMacroVersusBinary) {
  // tp=3 fp=1 tn=1 fn=0
  const Pairs pairs = {{1, 1}, {1, 1}, {1, 1}, {1, 0}, {0, 0}};
  const auto bin = classification_metrics(pairs, Averaging::Binary);
  EXPECT_DOUBLE_EQ(bin.precision, 0.75);
  EXPECT_DOUBLE_EQ(bin.recall, 1.0);
  const auto macro = classification_metrics(pairs, Averaging::Macro);
  EXPECT_DOUBLE_EQ(macro.precision, (0.75 + 1.0) / 2);
  EXPECT_DOUBLE_EQ(macro.recall, (1.0 + 0.5) / 2);
}

TEST(Classification, ZeroDenominatorWarns) {
  Diagnostics diag;
  const auto r = classification_metrics(Pairs{{0, 1}, {0, 0}}, Averaging::Binary, &diag);
  EXPECT_EQ(r.precision, 0.0);
  EXPECT_EQ(r.f1, 0.0);
  EXPECT_FALSE(diag.empty());
}

TEST(Classification, Preconditions) {
  EXPECT_THROW(classification_metrics(Pairs{}, Averaging::Macro), PreconditionError);
  EXPECT_THROW(classification_metrics(Pairs{{2, 1}}, Averaging::Macro), PreconditionError);
}

TEST(Classification, MatchesOracleOnRandomVectors) {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 300; ++t) {
    Pairs pairs(std::uniform_int_distribution<int>(1, 40)(rng));
    for (auto& p : pairs) p = {static_cast<int>(rng() % 2), static_cast<int>(rng() % 2)};
    const auto o = oracle::classification(pairs);
    const auto m = classification_metrics(pairs, Averaging::Macro);
    const auto b = classification_metrics(pairs, Averaging::Binary);
    EXPECT_NEAR(m.accuracy, o.accuracy, 1e-12);
    EXPECT_NEAR(m.precision, o.macro_p, 1e-12);
    EXPECT_NEAR(m.recall, o.macro_r, 1e-12);
    EXPECT_NEAR(m.f1, o.macro_f1, 1e-12);
    EXPECT_NEAR(b.precision, o.bin_p, 1e-12);
    EXPECT_NEAR(b.recall, o.bin_r, 1e-12);
    EXPECT_NEAR(b.f1, o.bin_f1, 1e-12);
  }
}

TEST(BertScore, IdentityOrthogonalAndRescale) {
  const EmbeddingSequence a = {{1, 0, 0}, {0, 2, 0}};
  const EmbeddingSequence b = {{0, 0, 3}};
  const auto same = bertscore_from_embeddings(a, a);
  EXPECT_DOUBLE_EQ(same.f1, 1.0);
  const auto orth = bertscore_from_embeddings(a, b);
  EXPECT_DOUBLE_EQ(orth.precision, 0.0);
  EXPECT_DOUBLE_EQ(orth.f1, 0.0);
  EXPECT_NEAR(rescale_with_baseline(0.62, 0.8), -0.9, 1e-12);
  EXPECT_THROW(rescale_with_baseline(0.5, 1.0), PreconditionError);
}

TEST(BertScore, GreedyMatchingIsAsymmetric) {
  // Candidate token 0 matches reference token 0; candidate token 1 is orthogonal to both.
  const EmbeddingSequence cand = {{1, 0, 0}, {0, 0, 1}};
  const EmbeddingSequence ref = {{1, 0, 0}, {1, 1, 0}};
  const auto s = bertscore_from_embeddings(cand, ref);
  EXPECT_NEAR(s.precision, 0.5, 1e-12);
  EXPECT_NEAR(s.recall, (1.0 + 1.0 / std::sqrt(2.0)) / 2.0, 1e-12);
}

TEST(BertScore, EmptySideSkipsEmbedder) {
  int calls = 0;
  const Embedder embedder = [&](const std::vector<std::string>& texts) {
    ++calls;
    return std::vector<EmbeddingSequence>(texts.size(), EmbeddingSequence{{1.0, 0.0}});
  };
  const auto empty = bertscore("", "reference", embedder, 0.5);
  EXPECT_EQ(calls, 0);
  EXPECT_EQ(empty.raw.f1, 0.0);
  EXPECT_DOUBLE_EQ(empty.rescaled.f1, -1.0);
  const auto full = bertscore("a", "b", embedder);
  EXPECT_EQ(calls, 1);
  EXPECT_DOUBLE_EQ(full.rescaled.f1, full.raw.f1);
}

EndpointConfig mock(std::string id) {
  EndpointConfig e;
  e.id = std::move(id);
  return e;
}

TEST(GEval, FailuresExcludedFromMeans) {
  Gateway gw({mock("j")});
  const std::vector<GEvalItem> items = {
      {"a", "long custody and delayed trial", "long custody and delayed trial", "theft"},
      {"b", "MOCK-REPLY<<<cannot score this>>>", "reference text", "theft"},
      {"c", "entirely different words", "long custody and delayed trial", "theft"},
  };
  const auto s = geval_evaluate(items, gw, "j", 2);
  ASSERT_EQ(s.items.size(), 3u);
  EXPECT_EQ(s.items[1].case_id, "b");
  EXPECT_FALSE(s.items[1].verdict);
  EXPECT_FALSE(s.items[1].error.empty());
  EXPECT_EQ(s.scored, 2u);
  EXPECT_EQ(s.failures, 1u);
  ASSERT_TRUE(s.means);
  EXPECT_DOUBLE_EQ(s.means->overall, (10.0 + 1.0) / 2.0);
}

TEST(GEval, AllFailedHasNoMeans) {
  const auto s = summarize_geval({{"x", std::nullopt, "boom"}});
  EXPECT_FALSE(s.means);
  EXPECT_EQ(s.failures, 1u);
}

std::vector<CaseRecord> golds() { return load_corpus(testing::fixture("corpus4.jsonl")).records; }

std::vector<Prediction> perfect_predictions(const std::vector<CaseRecord>& gold, SetupId setup) {
  std::vector<Prediction> out;
  for (const auto& g : gold) {
    out.push_back({g.case_id, setup, map_outcome_to_binary(g.outcome, g.bail_type), g.reasoning,
                   g.bail_conditions.value_or(""), ConfidenceScore{}});
  }
  return out;
}

TEST(Evaluation, PerfectPredictionsScoreOne) {
  const auto gold = golds();
  Gateway gw({mock("emb")});
  EvaluationOptions opts;
  opts.embedding_endpoint = "emb";
  const auto e = evaluate_setup(SetupId::S1_Vanilla, perfect_predictions(gold, SetupId::S1_Vanilla), gold, &gw, opts);
  EXPECT_EQ(e.summary.scored_items, 4u);
  EXPECT_DOUBLE_EQ(e.summary.macro.accuracy, 1.0);
  EXPECT_DOUBLE_EQ(e.summary.reasoning.rouge_l, 1.0);
  ASSERT_TRUE(e.summary.reasoning.bertscore_f1);
  EXPECT_NEAR(*e.summary.reasoning.bertscore_f1, 1.0, 1e-12);
  EXPECT_EQ(e.summary.conditions.items, 3u);  // one gold record has no conditions
}

TEST(Evaluation, MissingAndUnknownPredictions) {
  const auto gold = golds();
  auto preds = perfect_predictions(gold, SetupId::S3_FT1);
  preds.erase(preds.begin());
  preds.push_back({"not-a-case", SetupId::S3_FT1, 1, "x", "", std::nullopt});
  Diagnostics diag;
  const auto e = evaluate_setup(SetupId::S3_FT1, preds, gold, nullptr, {}, &diag);
  EXPECT_EQ(e.summary.missing_predictions, 1u);
  EXPECT_EQ(e.summary.scored_items, 3u);
  EXPECT_FALSE(e.summary.reasoning.bertscore_f1);
  EXPECT_FALSE(diag.empty());
}

TEST(Evaluation, SummaryJsonRoundTrip) {
  const auto gold = golds();
  const auto e = evaluate_setup(SetupId::S2_VanillaCtx, perfect_predictions(gold, SetupId::S2_VanillaCtx), gold,
                                nullptr, {});
  const auto back = setup_summary_from_json(nlohmann::json::parse(to_json(e.summary).dump()));
  EXPECT_EQ(to_json(back).dump(), to_json(e.summary).dump());
}

std::vector<SetupSummary> six_summaries() {
  const auto gold = golds();
  Gateway gw({mock("emb")});
  EvaluationOptions opts;
  opts.embedding_endpoint = "emb";
  std::vector<SetupSummary> out;
  for (auto id : {SetupId::S6_FT2Ctx, SetupId::S1_Vanilla, SetupId::S4_FT2, SetupId::S2_VanillaCtx, SetupId::S5_FT1Ctx,
                  SetupId::S3_FT1}) {
    auto preds = perfect_predictions(gold, id);
    preds[static_cast<int>(id) % 4].y_pred ^= 1;
    out.push_back(evaluate_setup(id, preds, gold, &gw, opts).summary);
  }
  return out;
}

TEST(Table, ShapeAndOrder) {
  const auto table = assemble_table(six_summaries());
  ASSERT_EQ(table.rows.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(table.rows[i].setup, kTableOrder[i]);
    for (const auto& v : table.rows[i].values) EXPECT_TRUE(v.has_value());
  }
  EXPECT_EQ(EvaluationTable::column_names().size(), 11u);
  const auto csv = table.to_csv();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_EQ(csv.substr(0, csv.find('\n')).find("setup,label,"), 0u);
  EXPECT_NE(csv.find("FT-1 + Context"), std::string::npos);
  EXPECT_NE(table.to_markdown().find("| VANILLA |"), std::string::npos);
}

TEST(Table, DeterministicAndRejectsDuplicates) {
  auto a = six_summaries();
  auto b = a;
  std::reverse(b.begin(), b.end());
  EXPECT_EQ(assemble_table(a).to_csv(), assemble_table(b).to_csv());
  a.push_back(a.front());
  EXPECT_THROW(assemble_table(a), PreconditionError);
}

TEST(Table, MissingBertScoreLeavesBlankCells) {
  const auto gold = golds();
  const auto e = evaluate_setup(SetupId::S1_Vanilla, perfect_predictions(gold, SetupId::S1_Vanilla), gold, nullptr, {});
  const std::vector<SetupSummary> one = {e.summary};
  const auto table = assemble_table(one);
  ASSERT_EQ(table.rows.size(), 1u);
  EXPECT_FALSE(table.rows[0].values[7].has_value());
  EXPECT_FALSE(table.rows[0].values[10].has_value());
  EXPECT_NE(table.to_csv().find(",,"), std::string::npos);
}

}  // namespace
}  // namespace bailbench
