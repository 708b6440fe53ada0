#pragma once

#include <string>
#include <utility>
#include <vector>

// Deliberately naive reference implementations. They share no code with the
// library beyond the stemmer, which has its own vocabulary test.
namespace bailbench::oracle {

using Tokens = std::vector<std::string>;

// Longest common subsequence by enumerating every subsequence of `a`
// (so keep |a| small, at most ~16).
std::size_t lcs_brute_force(const Tokens& a, const Tokens& b);
double rouge_l(const Tokens& cand, const Tokens& ref);

// BLEU with explicit n-gram lists and linear-scan counting.
double bleu(const Tokens& cand, const Tokens& ref, int max_n = 4);

// METEOR by the textbook formula on an alignment computed occurrence by
// occurrence: the k-th candidate copy of a word pairs with the k-th unused
// reference copy; stems are tried on whatever is left.
double meteor(const Tokens& cand, const Tokens& ref);

struct Counts {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};
// Macro and binary P/R/F1 from a direct confusion-matrix tally.
struct Classification {
  double accuracy, macro_p, macro_r, macro_f1, bin_p, bin_r, bin_f1;
};
Classification classification(const std::vector<std::pair<int, int>>& pairs);

}  // namespace bailbench::oracle
