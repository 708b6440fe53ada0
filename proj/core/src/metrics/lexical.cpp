#include "bailbench/metrics/lexical.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "bailbench/metrics/porter_stemmer.hpp"
#include "bailbench/metrics/tokenize.hpp"

namespace bailbench {

namespace {

std::size_t lcs_length(const Tokens& a, const Tokens& b) {
  // Two rolling rows of the DP table.
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::map<std::vector<std::string_view>, std::size_t> ngram_counts(const Tokens& t, std::size_t n) {
  std::map<std::vector<std::string_view>, std::size_t> counts;
  for (std::size_t i = 0; i + n <= t.size(); ++i) {
    std::vector<std::string_view> g(t.begin() + static_cast<std::ptrdiff_t>(i),
                                    t.begin() + static_cast<std::ptrdiff_t>(i + n));
    ++counts[std::move(g)];
  }
  return counts;
}

// Pairs the k-th unmatched candidate occurrence of each key with the k-th
// unmatched reference occurrence.
void align_stage(const std::vector<std::string>& cand_keys, const std::vector<std::string>& ref_keys,
                 std::vector<long>& cand_to_ref, std::vector<bool>& ref_used) {
  std::map<std::string_view, std::vector<std::size_t>> free_ref;
  for (std::size_t j = 0; j < ref_keys.size(); ++j) {
    if (!ref_used[j]) free_ref[ref_keys[j]].push_back(j);
  }
  std::map<std::string_view, std::size_t> taken;
  for (std::size_t i = 0; i < cand_keys.size(); ++i) {
    if (cand_to_ref[i] >= 0) continue;
    auto it = free_ref.find(cand_keys[i]);
    if (it == free_ref.end()) continue;
    auto& k = taken[cand_keys[i]];
    if (k >= it->second.size()) continue;
    const auto j = it->second[k++];
    cand_to_ref[i] = static_cast<long>(j);
    ref_used[j] = true;
  }
}

}  // namespace

double rouge_l(const Tokens& candidate, const Tokens& reference, Diagnostics* diag, std::string_view item) {
  if (candidate.empty() || reference.empty()) {
    if (diag) {
      diag->warn("metrics", std::string(item), "rouge_l",
                 candidate.empty() ? "candidate is empty after tokenization" : "reference is empty after tokenization");
    }
    return 0.0;
  }
  const auto lcs = static_cast<double>(lcs_length(candidate, reference));
  if (lcs == 0.0) return 0.0;
  const double p = lcs / static_cast<double>(candidate.size());
  const double r = lcs / static_cast<double>(reference.size());
  return 2.0 * p * r / (p + r);
}

double bleu(const Tokens& candidate, const Tokens& reference, int max_n) {
  if (candidate.empty() || max_n < 1) return 0.0;
  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const auto cand = ngram_counts(candidate, static_cast<std::size_t>(n));
    const auto ref = ngram_counts(reference, static_cast<std::size_t>(n));
    std::size_t clipped = 0, total = 0;
    for (const auto& [g, c] : cand) {
      total += c;
      if (auto it = ref.find(g); it != ref.end()) clipped += std::min(c, it->second);
    }
    double p;
    if (n == 1) {
      if (clipped == 0) return 0.0;
      p = static_cast<double>(clipped) / static_cast<double>(total);
    } else {
      p = static_cast<double>(clipped + 1) / static_cast<double>(total + 1);
    }
    log_sum += std::log(p);
  }
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(reference.size());
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return bp * std::exp(log_sum / max_n);
}

MeteorAlignment meteor_align(const Tokens& candidate, const Tokens& reference) {
  std::vector<long> cand_to_ref(candidate.size(), -1);
  std::vector<bool> ref_used(reference.size(), false);
  align_stage(candidate, reference, cand_to_ref, ref_used);

  std::vector<std::string> cand_stems, ref_stems;
  cand_stems.reserve(candidate.size());
  ref_stems.reserve(reference.size());
  for (const auto& t : candidate) cand_stems.push_back(porter_stem(t));
  for (const auto& t : reference) ref_stems.push_back(porter_stem(t));
  align_stage(cand_stems, ref_stems, cand_to_ref, ref_used);

  MeteorAlignment a;
  long prev = -2;
  for (long j : cand_to_ref) {
    if (j < 0) {
      prev = -2;
      continue;
    }
    ++a.matches;
    if (j != prev + 1) ++a.chunks;
    prev = j;
  }
  return a;
}

double meteor(const Tokens& candidate, const Tokens& reference, const MeteorParams& params) {
  if (candidate.empty() || reference.empty()) return 0.0;
  const auto a = meteor_align(candidate, reference);
  if (a.matches == 0) return 0.0;
  const double m = static_cast<double>(a.matches);
  const double p = m / static_cast<double>(candidate.size());
  const double r = m / static_cast<double>(reference.size());
  const double fmean = p * r / (params.alpha * p + (1.0 - params.alpha) * r);
  const double penalty = params.gamma * std::pow(static_cast<double>(a.chunks) / m, params.beta);
  return fmean * (1.0 - penalty);
}

double rouge_l(std::string_view candidate, std::string_view reference, Diagnostics* diag, std::string_view item) {
  return rouge_l(tokenize(candidate), tokenize(reference), diag, item);
}

double bleu(std::string_view candidate, std::string_view reference, int max_n) {
  return bleu(tokenize(candidate), tokenize(reference), max_n);
}

double meteor(std::string_view candidate, std::string_view reference, const MeteorParams& params) {
  return meteor(tokenize(candidate), tokenize(reference), params);
}

}  // namespace bailbench
