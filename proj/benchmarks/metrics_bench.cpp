#include <benchmark/benchmark.h>

#include <random>

#include "bailbench/metrics/bertscore.hpp"
#include "bailbench/metrics/classification.hpp"
#include "bailbench/metrics/lexical.hpp"

namespace {

using bailbench::Tokens;

Tokens random_text(std::mt19937_64& rng, std::size_t n) {
  static const Tokens vocab = {"the",     "court",   "bail",   "granted", "accused",  "custody", "trial",
                               "witness", "evidence", "delay", "serious", "offence",  "surety",  "bond",
                               "police",  "station", "report", "weekly",  "passport", "surrender"};
  Tokens out(n);
  for (auto& t : out) t = vocab[rng() % vocab.size()];
  return out;
}

void BM_RougeL(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto a = random_text(rng, static_cast<std::size_t>(state.range(0)));
  const auto b = random_text(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bailbench::rouge_l(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RougeL)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_Bleu(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto a = random_text(rng, static_cast<std::size_t>(state.range(0)));
  const auto b = random_text(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bailbench::bleu(a, b));
}
BENCHMARK(BM_Bleu)->RangeMultiplier(4)->Range(16, 1024);

void BM_Meteor(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto a = random_text(rng, static_cast<std::size_t>(state.range(0)));
  const auto b = random_text(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bailbench::meteor(a, b));
}
BENCHMARK(BM_Meteor)->RangeMultiplier(4)->Range(16, 1024);

void BM_BertScoreGreedy(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> d;
  const auto n = static_cast<std::size_t>(state.range(0));
  bailbench::EmbeddingSequence a(n, std::vector<double>(64)), b(n, std::vector<double>(64));
  for (auto* seq : {&a, &b})
    for (auto& v : *seq)
      for (auto& x : v) x = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(bailbench::bertscore_from_embeddings(a, b));
}
BENCHMARK(BM_BertScoreGreedy)->RangeMultiplier(4)->Range(16, 256);

void BM_Classification(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::vector<std::pair<int, int>> pairs(static_cast<std::size_t>(state.range(0)));
  for (auto& p : pairs) p = {static_cast<int>(rng() % 2), static_cast<int>(rng() % 2)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(bailbench::classification_metrics(pairs, bailbench::Averaging::Macro));
  }
}
BENCHMARK(BM_Classification)->Arg(1000)->Arg(100000);

}  // namespace
