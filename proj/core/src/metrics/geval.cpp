#include "bailbench/metrics/geval.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace bailbench {

nlohmann::ordered_json to_json(const GEvalMeans& m) {
  return {{"factual_accuracy", m.factual_accuracy},
          {"completeness_coverage", m.completeness_coverage},
          {"clarity_coherence", m.clarity_coherence},
          {"overall", m.overall}};
}

GEvalSummary summarize_geval(std::vector<GEvalItemResult> items) {
  GEvalSummary s;
  GEvalMeans sum;
  for (const auto& it : items) {
    if (!it.verdict) {
      ++s.failures;
      continue;
    }
    ++s.scored;
    sum.factual_accuracy += it.verdict->factual_accuracy;
    sum.completeness_coverage += it.verdict->completeness_coverage;
    sum.clarity_coherence += it.verdict->clarity_coherence;
    sum.overall += it.verdict->overall;
  }
  if (s.scored > 0) {
    const auto n = static_cast<double>(s.scored);
    s.means = GEvalMeans{sum.factual_accuracy / n, sum.completeness_coverage / n, sum.clarity_coherence / n,
                         sum.overall / n};
  }
  s.items = std::move(items);
  return s;
}

GEvalSummary geval_evaluate(const std::vector<GEvalItem>& items, Gateway& gateway, const std::string& endpoint_id,
                            std::size_t jobs, Diagnostics* diag, const JudgeOptions& options) {
  std::vector<GEvalItemResult> results(items.size());
  std::vector<Diagnostics> diags(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      const auto& item = items[i];
      auto& r = results[i];
      r.case_id = item.case_id;
      try {
        auto v = judge(gateway, endpoint_id, item.explanation, item.reference, item.case_summary,
                       "judge/" + item.case_id, &diags[i], options);
        if (v) {
          r.verdict = std::move(*v);
        } else {
          r.error = v.error();
        }
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::max<std::size_t>(1, std::min(jobs, items.size()));
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
  }
  if (diag) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      diag->append(diags[i]);
      if (!results[i].verdict) diag->error("metrics", results[i].case_id, "geval", results[i].error);
    }
  }
  return summarize_geval(std::move(results));
}

}  // namespace bailbench
