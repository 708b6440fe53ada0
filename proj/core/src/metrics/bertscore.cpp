#include "bailbench/metrics/bertscore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bailbench/common/errors.hpp"
#include "bailbench/common/text.hpp"

namespace bailbench {

namespace {

std::vector<std::vector<double>> normalized(const EmbeddingSequence& seq) {
  std::vector<std::vector<double>> out;
  out.reserve(seq.size());
  for (const auto& v : seq) {
    double n = 0.0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    auto& u = out.emplace_back(v);
    if (n > 0.0) {
      for (double& x : u) x /= n;
    }
  }
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw PreconditionError("embedding dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

}  // namespace

BertScore bertscore_from_embeddings(const EmbeddingSequence& candidate, const EmbeddingSequence& reference) {
  if (candidate.empty() || reference.empty()) return {};
  const auto c = normalized(candidate);
  const auto r = normalized(reference);
  std::vector<double> best_c(c.size(), -std::numeric_limits<double>::infinity());
  std::vector<double> best_r(r.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      const double s = dot(c[i], r[j]);
      best_c[i] = std::max(best_c[i], s);
      best_r[j] = std::max(best_r[j], s);
    }
  }
  BertScore out;
  for (double s : best_c) out.precision += s;
  for (double s : best_r) out.recall += s;
  out.precision /= static_cast<double>(c.size());
  out.recall /= static_cast<double>(r.size());
  out.f1 = harmonic(out.precision, out.recall);
  return out;
}

double rescale_with_baseline(double x, double baseline) {
  if (!(baseline < 1.0)) throw PreconditionError("BERTScore baseline must be below 1");
  return (x - baseline) / (1.0 - baseline);
}

BertScoreResult bertscore(const std::string& candidate, const std::string& reference, const Embedder& embedder,
                          std::optional<double> baseline) {
  BertScoreResult out;
  if (!text::trim(candidate).empty() && !text::trim(reference).empty()) {
    auto seqs = embedder({candidate, reference});
    if (seqs.size() != 2) throw PreconditionError("embedder returned the wrong number of sequences");
    out.raw = bertscore_from_embeddings(seqs[0], seqs[1]);
  }
  out.rescaled = out.raw;
  if (baseline) {
    out.rescaled.precision = rescale_with_baseline(out.raw.precision, *baseline);
    out.rescaled.recall = rescale_with_baseline(out.raw.recall, *baseline);
    out.rescaled.f1 = rescale_with_baseline(out.raw.f1, *baseline);
  }
  return out;
}

}  // namespace bailbench
