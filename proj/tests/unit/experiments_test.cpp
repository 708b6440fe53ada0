#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bailbench/common/errors.hpp"
#include "bailbench/common/text.hpp"
#include "bailbench/experiments/prediction.hpp"
#include "bailbench/experiments/runner.hpp"
#include "bailbench/experiments/setup.hpp"
#include "bailbench/statutes/index.hpp"
#include "test_support.hpp"

namespace bailbench {
namespace {

TEST(Confidence, KnownValues) {
  const auto even = confidence_from_logprobs(-0.7, -0.7);
  EXPECT_DOUBLE_EQ(even.p0, 50.0);
  const auto c = confidence_from_logprobs(std::log(0.1), std::log(0.9));
  EXPECT_NEAR(c.p0, 10.0, 1e-9);
  EXPECT_NEAR(c.p1, 90.0, 1e-9);
  EXPECT_THROW(confidence_from_logprobs(std::map<std::string, double>{{"0", -1.0}}), PreconditionError);
}

TEST(Confidence, SumsToHundredForExtremeInputs) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(-1000.0, 1000.0);
  for (int i = 0; i < 2000; ++i) {
    const auto c = confidence_from_logprobs(d(rng), d(rng));
    ASSERT_TRUE(std::isfinite(c.p0) && std::isfinite(c.p1));
    ASSERT_GE(c.p0, 0.0);
    ASSERT_GE(c.p1, 0.0);
    ASSERT_NEAR(c.p0 + c.p1, 100.0, 1e-9);
  }
  EXPECT_NEAR(confidence_from_logprobs(-1000.0, 1000.0).p1, 100.0, 1e-9);
}

TEST(OutcomeMapping, Exhaustive) {
  for (auto type : {BailType::Regular, BailType::Anticipatory, BailType::Cancellation}) {
    for (auto outcome : {Outcome::Granted, Outcome::NotGranted, Outcome::Cancelled, Outcome::NotCancelled}) {
      if (!outcome_matches(type, outcome)) {
        EXPECT_THROW(map_outcome_to_binary(outcome, type), PreconditionError);
        continue;
      }
      const int want = outcome == Outcome::Granted || outcome == Outcome::Cancelled;
      EXPECT_EQ(map_outcome_to_binary(outcome, type), want);
    }
  }
}

TEST(Setups, LabelsOrderAndRoles) {
  EXPECT_EQ(setup_label(SetupId::S5_FT1Ctx), "FT-1 + Context");
  EXPECT_EQ(parse_setup_id("s4"), SetupId::S4_FT2);
  EXPECT_EQ(parse_setup_id("S6_FT2Ctx"), SetupId::S6_FT2Ctx);
  EXPECT_FALSE(parse_setup_id("S7"));
  EXPECT_EQ(endpoint_role(SetupId::S2_VanillaCtx), "vanilla");
  EXPECT_TRUE(uses_statute_context(SetupId::S6_FT2Ctx));
  EXPECT_FALSE(uses_statute_context(SetupId::S3_FT1));
  EXPECT_EQ(kTableOrder[3], SetupId::S5_FT1Ctx);
  EXPECT_THROW(make_setup(SetupId::S3_FT1, {{"vanilla", "m"}}), ConfigError);
  EXPECT_EQ(make_setup(SetupId::S2_VanillaCtx, {{"vanilla", "m"}}).endpoint_id, "m");
}

TEST(ParsePrediction, DigitReasoningConditions) {
  const auto p = parse_prediction("1\nREASONING: Long custody.\nCONDITIONS: Surrender passport");
  ASSERT_TRUE(p.ok()) << p.error();
  EXPECT_EQ(p->label, 1);
  EXPECT_EQ(p->rationale, "Long custody.");
  EXPECT_EQ(p->bail_conditions, "Surrender passport");

  const auto none = parse_prediction("0 REASONING: Grave offence. CONDITIONS: None");
  ASSERT_TRUE(none.ok());
  EXPECT_EQ(none->label, 0);
  EXPECT_TRUE(none->bail_conditions.empty());
}

TEST(ParsePrediction, PhraseFallbackAndAmbiguity) {
  const auto phrase = parse_prediction("Bail not granted because the offence is grave.");
  ASSERT_TRUE(phrase.ok());
  EXPECT_EQ(phrase->label, 0);
  EXPECT_FALSE(parse_prediction("I am not sure.").ok());
  EXPECT_FALSE(parse_prediction("1").ok());  // no rationale
  const auto plain = parse_prediction("1\nThe accused has been in custody for long.");
  ASSERT_TRUE(plain.ok());
  EXPECT_EQ(plain->rationale, "The accused has been in custody for long.");
}

TEST(PredictionJson, RoundTrip) {
  Prediction p{"c1", SetupId::S4_FT2, 1, "why", "bond", ConfidenceScore{20.0, 80.0}};
  EXPECT_EQ(prediction_from_json(nlohmann::json::parse(to_json(p).dump())), p);
  p.confidence.reset();
  EXPECT_EQ(prediction_from_json(nlohmann::json::parse(to_json(p).dump())), p);
}

TEST(Prompt, NeverLeaksGoldFields) {
  const auto index = ingest_statutes(testing::fixture("statutes"));
  std::mt19937_64 rng(61);
  for (int i = 0; i < 200; ++i) {
    auto r = testing::random_case_record(rng, "l" + std::to_string(i));
    r.reasoning = "Distinctive gold rationale " + std::to_string(i);
    r.bail_conditions = "Distinctive gold condition " + std::to_string(i);
    const auto ctx = assemble_context(r.statutes, index, 512);
    for (const auto* c : {static_cast<const ContextBlock*>(nullptr), &ctx}) {
      const auto prompt = text::to_lower(build_prediction_prompt(r, c));
      EXPECT_EQ(prompt.find(text::to_lower(outcome_phrase(r.outcome))), std::string::npos);
      EXPECT_EQ(prompt.find("distinctive gold"), std::string::npos);
      EXPECT_NE(prompt.find(text::to_lower(r.incident_details)), std::string::npos);
    }
  }
}

TEST(Prompt, BudgetErrorNamesComponent) {
  std::mt19937_64 rng(1);
  const auto r = testing::random_case_record(rng, "b");
  try {
    build_prediction_prompt(r, nullptr, 10);
    FAIL();
  } catch (const ContextBudgetError& e) {
    EXPECT_FALSE(e.component().empty());
    EXPECT_EQ(e.budget(), 10u);
  }
}

std::vector<CaseRecord> records_with_outcomes(int n) {
  std::mt19937_64 rng(12);
  std::vector<CaseRecord> out;
  for (int i = n - 1; i >= 0; --i) {  // reverse id order on purpose
    auto r = testing::random_case_record(rng, "r" + std::to_string(100 + i));
    r.incident_details += " OUTCOME:" + std::to_string(i % 2) + " REASONING-ECHO[reason " + std::to_string(i) + "]";
    out.push_back(r);
  }
  return out;
}

EndpointConfig mock_endpoint() {
  EndpointConfig e;
  e.id = "m";
  e.max_in_flight = 3;
  return e;
}

TEST(Runner, OrderedByCaseIdWhateverTheJobs) {
  const auto records = records_with_outcomes(15);
  const auto setup = make_setup(SetupId::S1_Vanilla, {{"vanilla", "m"}});
  Gateway g1({mock_endpoint()}), g4({mock_endpoint()});
  const auto one = run_setup(setup, records, nullptr, &g1, {.run_id = "t", .jobs = 1});
  const auto four = run_setup(setup, records, nullptr, &g4, {.run_id = "t", .jobs = 4});
  ASSERT_EQ(one.predictions.size(), 15u);
  EXPECT_EQ(one.predictions, four.predictions);
  EXPECT_EQ(one.manifest.dump(), four.manifest.dump());
  for (std::size_t i = 1; i < one.predictions.size(); ++i)
    EXPECT_LT(one.predictions[i - 1].case_id, one.predictions[i].case_id);
  for (const auto& p : one.predictions) {
    const int idx = std::stoi(p.case_id.substr(1)) - 100;
    EXPECT_EQ(p.y_pred, idx % 2);
    EXPECT_EQ(p.rationale, "reason " + std::to_string(idx));
    ASSERT_TRUE(p.confidence);
    EXPECT_NEAR(p.confidence->p0 + p.confidence->p1, 100.0, 1e-9);
  }
  EXPECT_FALSE(one.failed);
}

TEST(Runner, ErrorRateThresholdMarksRunFailed) {
  auto records = records_with_outcomes(10);
  records[0].incident_details += " MOCK-REPLY<<<no idea>>>";
  const auto setup = make_setup(SetupId::S1_Vanilla, {{"vanilla", "m"}});
  Gateway gw({mock_endpoint()});
  const auto ok = run_setup(setup, records, nullptr, &gw, {.max_item_error_rate = 0.10});
  EXPECT_EQ(ok.errors.size(), 1u);
  EXPECT_FALSE(ok.failed);  // 1/10 is not above 0.10

  records[1].incident_details += " MOCK-REPLY<<<still no idea>>>";
  const auto bad = run_setup(setup, records, nullptr, &gw, {.max_item_error_rate = 0.10});
  EXPECT_EQ(bad.errors.size(), 2u);
  EXPECT_TRUE(bad.failed);
  EXPECT_EQ(bad.predictions.size(), 8u);
}

TEST(Runner, DryRunMakesNoRequests) {
  const auto records = records_with_outcomes(5);
  const auto index = ingest_statutes(testing::fixture("statutes"));
  Gateway gw({mock_endpoint()});
  const auto run = run_setup(make_setup(SetupId::S2_VanillaCtx, {{"vanilla", "m"}}), records, &index, &gw,
                             {.dry_run = true});
  EXPECT_EQ(run.prompts.size(), 5u);
  EXPECT_TRUE(run.predictions.empty());
  EXPECT_TRUE(gw.log().empty());
  const auto no_gateway = run_setup(make_setup(SetupId::S1_Vanilla, {{"vanilla", "m"}}), records, nullptr, nullptr,
                                    {.dry_run = true});
  EXPECT_EQ(no_gateway.prompts.size(), 5u);
}

TEST(Runner, ContextSetupWithoutIndexIsConfigError) {
  const auto records = records_with_outcomes(2);
  Gateway gw({mock_endpoint()});
  EXPECT_THROW(run_setup(make_setup(SetupId::S2_VanillaCtx, {{"vanilla", "m"}}), records, nullptr, &gw, {}),
               ConfigError);
}

TEST(Runner, WriteAndLoadPredictions) {
  const auto records = records_with_outcomes(4);
  Gateway gw({mock_endpoint()});
  const auto run = run_setup(make_setup(SetupId::S3_FT1, {{"ft1", "m"}}), records, nullptr, &gw, {});
  const auto dir = testing::scratch_dir("runner-write");
  write_setup_run(run, dir);
  EXPECT_EQ(load_predictions(dir / "predictions.jsonl"), run.predictions);
  EXPECT_TRUE(std::filesystem::exists(dir / "manifest.json"));
}

}  // namespace
}  // namespace bailbench
