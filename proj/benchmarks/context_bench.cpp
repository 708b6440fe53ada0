#include <benchmark/benchmark.h>

#include <string>

#include "bailbench/statutes/context.hpp"
#include "bailbench/statutes/index.hpp"

namespace {

bailbench::StatuteIndex synthetic_index(int sections) {
  bailbench::StatuteIndex index;
  for (int i = 1; i <= sections; ++i) {
    std::string body;
    for (int s = 0; s < 12; ++s) {
      body += "Whoever commits an offence described in clause " + std::to_string(s) +
              " shall be punished with imprisonment which may extend to " + std::to_string(i % 10 + 1) + " years. ";
    }
    index.insert({"IPC", std::to_string(i), "Heading " + std::to_string(i), body, "synthetic"});
  }
  return index;
}

void BM_AssembleContext(benchmark::State& state) {
  const auto index = synthetic_index(500);
  std::vector<bailbench::StatuteCitation> cites;
  for (int i = 0; i < state.range(0); ++i) cites.push_back({std::to_string(i * 7 % 500 + 1), "Indian Penal Code"});
  for (auto _ : state) benchmark::DoNotOptimize(bailbench::assemble_context(cites, index, 2048));
}
BENCHMARK(BM_AssembleContext)->Arg(1)->Arg(4)->Arg(16)->Arg(64);

void BM_ResolveFuzzy(benchmark::State& state) {
  const auto index = synthetic_index(500);
  const bailbench::StatuteCitation c{"250(1)(b)", "I.P.C."};
  for (auto _ : state) benchmark::DoNotOptimize(index.resolve(c));
}
BENCHMARK(BM_ResolveFuzzy);

}  // namespace
