#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bailbench/gateway/types.hpp"

namespace bailbench {

// Maps texts to one vector per token. Failures surface as exceptions.
using Embedder = std::function<std::vector<EmbeddingSequence>(const std::vector<std::string>&)>;

struct BertScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct BertScoreResult {
  BertScore raw;
  BertScore rescaled;  // equals raw when no baseline is set
};

// Greedy cosine matching: each candidate token takes its best reference
// token (precision) and vice versa (recall).
BertScore bertscore_from_embeddings(const EmbeddingSequence& candidate, const EmbeddingSequence& reference);

// (x - b) / (1 - b); b must be below 1.
double rescale_with_baseline(double x, double baseline);

// An empty side scores 0 without calling the embedder.
BertScoreResult bertscore(const std::string& candidate, const std::string& reference, const Embedder& embedder,
                          std::optional<double> baseline = std::nullopt);

}  // namespace bailbench
