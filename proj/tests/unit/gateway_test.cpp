#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <thread>

#include "bailbench/common/errors.hpp"
#include "bailbench/gateway/gateway.hpp"
#include "bailbench/gateway/judge.hpp"
#include "test_support.hpp"

namespace bailbench {
namespace {

EndpointConfig mock(std::string id) {
  EndpointConfig e;
  e.id = std::move(id);
  e.kind = BackendKind::Mock;
  e.backoff_ms = 1;
  return e;
}

GenerationRequest decision_request(std::string prompt) {
  GenerationRequest r;
  r.prompt = std::move(prompt);
  r.want_logprobs = true;
  r.candidate_tokens = {"0", "1"};
  return r;
}

TEST(MockBackend, MarkersDriveTheReply) {
  MockBackend b(mock("m"));
  const auto r = b.generate(decision_request(
      "facts OUTCOME:0 REASONING-ECHO[no ground made out] CONDITIONS-ECHO[None] more"));
  EXPECT_EQ(r.text.substr(0, 1), "0");
  EXPECT_NE(r.text.find("REASONING: no ground made out"), std::string::npos);
  ASSERT_TRUE(r.decision_logprobs);
  EXPECT_NEAR(r.decision_logprobs->at("0"), std::log(0.9), 1e-12);
  EXPECT_NEAR(r.decision_logprobs->at("1"), std::log(0.1), 1e-12);
  EXPECT_EQ(b.generate(decision_request("x MOCK-REPLY<<<a>>> y MOCK-REPLY<<<b>>>")).text, "b");
}

TEST(MockBackend, DeterministicAcrossInstances) {
  MockBackend a(mock("m")), b(mock("m"));
  for (int i = 0; i < 20; ++i) {
    const auto req = decision_request("prompt " + std::to_string(i));
    EXPECT_EQ(a.generate(req), b.generate(req));
  }
  EXPECT_EQ(a.embed({"bail granted"}), b.embed({"bail granted"}));
}

TEST(MockBackend, FlipPercentChangesSomeDecisions) {
  auto cfg = mock("m");
  MockBackend plain(cfg);
  cfg.flip_percent = 50;
  MockBackend flipped(cfg);
  int differ = 0;
  for (int i = 0; i < 200; ++i) {
    const auto req = decision_request("OUTCOME:1 case " + std::to_string(i));
    differ += plain.generate(req).text[0] != flipped.generate(req).text[0];
  }
  EXPECT_GT(differ, 60);
  EXPECT_LT(differ, 140);
}

TEST(MockBackend, EmbeddingsAreUnitVectorsPerToken) {
  MockBackend b(mock("m"));
  const auto seqs = b.embed({"one two three", "one"});
  ASSERT_EQ(seqs.size(), 2u);
  ASSERT_EQ(seqs[0].size(), 3u);
  EXPECT_EQ(seqs[0][0], seqs[1][0]);
  double n = 0;
  for (double x : seqs[0][1]) n += x * x;
  EXPECT_NEAR(n, 1.0, 1e-12);
}

TEST(Gateway, CacheHitsOnDiskAndOffline) {
  const auto dir = testing::scratch_dir("gateway-cache");
  const auto req = decision_request("cache me");
  GenerationResult first;
  {
    Gateway gw({mock("m")}, {.run_id = "r", .cache_dir = dir});
    first = gw.generate("m", req, "t");
    EXPECT_EQ(gw.generate("m", req, "t"), first);
    EXPECT_EQ(gw.cache_hits(), 1);
  }
  Gateway offline({mock("m")}, {.run_id = "r", .cache_dir = dir, .offline = true});
  EXPECT_EQ(offline.generate("m", req, "t"), first);
  EXPECT_THROW(offline.generate("m", decision_request("never seen"), "t"), GatewayError);
}

TEST(Gateway, InvalidRequestsAndUnknownEndpoints) {
  Gateway gw({mock("m")});
  auto bad = decision_request("x");
  bad.max_new_tokens = 0;
  EXPECT_THROW(gw.generate("m", bad, "t"), PreconditionError);
  EXPECT_THROW(gw.generate("nope", decision_request("x"), "t"), PreconditionError);
  EXPECT_THROW(gw.embed("m", {}, "t"), PreconditionError);
}

class FlakyBackend final : public Backend {
 public:
  FlakyBackend(std::atomic<int>& calls, int failures, bool retryable)
      : calls_(calls), failures_(failures), retryable_(retryable) {}
  GenerationResult generate(const GenerationRequest&) override {
    if (calls_.fetch_add(1) < failures_) throw GatewayError("transient", retryable_);
    return {"1\nREASONING: ok", std::nullopt, {}};
  }
  std::vector<EmbeddingSequence> embed(const std::vector<std::string>&) override { return {}; }

 private:
  std::atomic<int>& calls_;
  int failures_;
  bool retryable_;
};

TEST(Gateway, RetriesRetryableFailuresUpToTheLimit) {
  std::atomic<int> calls{0};
  auto cfg = mock("f");
  cfg.max_attempts = 3;
  Gateway ok({cfg}, {}, [&](const EndpointConfig&) { return std::make_unique<FlakyBackend>(calls, 2, true); });
  EXPECT_EQ(ok.generate("f", decision_request("x"), "t").text, "1\nREASONING: ok");
  EXPECT_EQ(calls.load(), 3);
  EXPECT_EQ(ok.log().front().attempts, 3);

  calls = 0;
  Gateway exhausted({cfg}, {}, [&](const EndpointConfig&) { return std::make_unique<FlakyBackend>(calls, 5, true); });
  EXPECT_THROW(exhausted.generate("f", decision_request("x"), "t"), GatewayError);
  EXPECT_EQ(calls.load(), 3);

  calls = 0;
  Gateway fatal({cfg}, {}, [&](const EndpointConfig&) { return std::make_unique<FlakyBackend>(calls, 5, false); });
  EXPECT_THROW(fatal.generate("f", decision_request("x"), "t"), GatewayError);
  EXPECT_EQ(calls.load(), 1);
}

TEST(Gateway, InFlightWindowIsRespected) {
  auto cfg = mock("m");
  cfg.max_in_flight = 2;
  cfg.latency_ms = 5;
  Gateway gw({cfg});
  std::vector<std::jthread> workers;
  for (int w = 0; w < 6; ++w) {
    workers.emplace_back([&, w] {
      for (int i = 0; i < 5; ++i) gw.generate("m", decision_request(std::to_string(w) + "/" + std::to_string(i)), "t");
    });
  }
  workers.clear();
  EXPECT_LE(gw.peak_in_flight("m"), 2);
  EXPECT_GE(gw.peak_in_flight("m"), 1);
}

TEST(Gateway, LogOrderIndependentOfScheduling) {
  auto run = [](int threads) {
    Gateway gw({mock("m")});
    std::vector<std::jthread> workers;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (int i; (i = next.fetch_add(1)) < 12;) gw.generate("m", decision_request("p" + std::to_string(i)), "item" + std::to_string(i));
      });
    }
    workers.clear();
    std::vector<std::string> tags;
    for (const auto& e : gw.log()) tags.push_back(e.tag + ":" + e.request_hash);
    return tags;
  };
  EXPECT_EQ(run(1), run(4));
}

TEST(Judge, ParsesScoresAndClamps) {
  Diagnostics diag;
  const auto v = parse_judge_reply(
      "Step 1: fine.\nFACTUAL_ACCURACY: 7\n- **Completeness_Coverage**: 12\nClarity_Coherence: 0\nOVERALL: 6", &diag);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->factual_accuracy, 7);
  EXPECT_EQ(v->completeness_coverage, 10);
  EXPECT_EQ(v->clarity_coherence, 1);
  EXPECT_EQ(v->overall, 6);
  EXPECT_EQ(diag.size(), 2u);

  const auto defaulted = parse_judge_reply("FACTUAL_ACCURACY: 8\nCOMPLETENESS_COVERAGE: 6\nCLARITY_COHERENCE: 5");
  ASSERT_TRUE(defaulted);
  EXPECT_EQ(defaulted->overall, 6);  // round(19/3)
  EXPECT_FALSE(parse_judge_reply("FACTUAL_ACCURACY: 8\nOVERALL: 9"));
}

TEST(Judge, MockJudgeRewardsOverlap) {
  Gateway gw({mock("j")});
  const auto same = judge(gw, "j", "custody is long and trial delayed", "custody is long and trial delayed",
                          "theft case", "judge/a");
  ASSERT_TRUE(same.ok()) << same.error();
  EXPECT_EQ(same->overall, 10);
  const auto apart = judge(gw, "j", "completely unrelated words here", "custody is long and trial delayed",
                           "theft case", "judge/b");
  ASSERT_TRUE(apart.ok());
  EXPECT_EQ(apart->overall, 1);
  EXPECT_THROW(render_judge_prompt("", "ref", "sum"), PreconditionError);
}

TEST(Judge, UnparseableReplyBecomesItemError) {
  Gateway gw({mock("j")});
  const auto r = judge(gw, "j", "MOCK-REPLY<<<I refuse>>>", "reference", "summary", "judge/x");
  EXPECT_FALSE(r.ok());
}

TEST(EndpointConfig, JsonValidation) {
  const auto e = endpoint_from_json("x", {{"kind", "mock"}, {"flip_percent", 10}});
  EXPECT_EQ(e.kind, BackendKind::Mock);
  EXPECT_EQ(e.flip_percent, 10);
  EXPECT_THROW(endpoint_from_json("x", {{"kind", "carrier-pigeon"}}), ConfigError);
  EXPECT_THROW(endpoint_from_json("x", {{"kind", "mock"}, {"max_in_flight", 0}}), ConfigError);
}

}  // namespace
}  // namespace bailbench
