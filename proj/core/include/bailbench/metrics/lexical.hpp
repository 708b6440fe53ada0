#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bailbench/common/diagnostics.hpp"

namespace bailbench {

using Tokens = std::vector<std::string>;

// LCS-based F-measure (beta = 1) over word tokens. Either side empty: 0,
// with a warning when `diag` is given.
double rouge_l(const Tokens& candidate, const Tokens& reference, Diagnostics* diag = nullptr,
               std::string_view item = {});

// Sentence BLEU with clipped n-gram precisions and a brevity penalty.
// p1 is unsmoothed; p2..pN use add-one smoothing on both counts.
double bleu(const Tokens& candidate, const Tokens& reference, int max_n = 4);

struct MeteorParams {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;
};

struct MeteorAlignment {
  std::size_t matches = 0;
  std::size_t chunks = 0;
};

// Exact matches first, then Porter-stem matches among what is left. Within a
// stage the k-th unmatched occurrence of a key in the candidate pairs with
// the k-th unmatched occurrence in the reference.
MeteorAlignment meteor_align(const Tokens& candidate, const Tokens& reference);

// No WordNet synonym stage.
double meteor(const Tokens& candidate, const Tokens& reference, const MeteorParams& params = {});

// Convenience overloads that tokenize first.
double rouge_l(std::string_view candidate, std::string_view reference, Diagnostics* diag = nullptr,
               std::string_view item = {});
double bleu(std::string_view candidate, std::string_view reference, int max_n = 4);
double meteor(std::string_view candidate, std::string_view reference, const MeteorParams& params = {});

}  // namespace bailbench
