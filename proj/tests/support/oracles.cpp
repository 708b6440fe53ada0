#include "oracles.hpp"

#include <cmath>

#include "bailbench/metrics/porter_stemmer.hpp"

namespace bailbench::oracle {

namespace {

bool is_subsequence(const Tokens& sub, const Tokens& seq) {
  std::size_t j = 0;
  for (const auto& t : seq) {
    if (j < sub.size() && sub[j] == t) ++j;
  }
  return j == sub.size();
}

std::vector<Tokens> ngrams(const Tokens& t, int n) {
  std::vector<Tokens> out;
  for (int i = 0; i + n <= static_cast<int>(t.size()); ++i) out.emplace_back(t.begin() + i, t.begin() + i + n);
  return out;
}

std::size_t count_of(const std::vector<Tokens>& list, const Tokens& g) {
  std::size_t c = 0;
  for (const auto& x : list) c += x == g ? 1 : 0;
  return c;
}

double safe_div(double a, double b) { return b == 0 ? 0.0 : a / b; }
double f1(double p, double r) { return p + r == 0 ? 0.0 : 2 * p * r / (p + r); }

}  // namespace

std::size_t lcs_brute_force(const Tokens& a, const Tokens& b) {
  std::size_t best = 0;
  const std::size_t n = a.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Tokens sub;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) sub.push_back(a[i]);
    }
    if (sub.size() > best && is_subsequence(sub, b)) best = sub.size();
  }
  return best;
}

double rouge_l(const Tokens& cand, const Tokens& ref) {
  if (cand.empty() || ref.empty()) return 0.0;
  const double l = static_cast<double>(lcs_brute_force(cand, ref));
  const double p = l / cand.size();
  const double r = l / ref.size();
  return f1(p, r);
}

double bleu(const Tokens& cand, const Tokens& ref, int max_n) {
  if (cand.empty()) return 0.0;
  double product = 1.0;
  for (int n = 1; n <= max_n; ++n) {
    const auto cg = ngrams(cand, n);
    const auto rg = ngrams(ref, n);
    // Clip each distinct candidate n-gram once.
    std::vector<Tokens> seen;
    double clipped = 0;
    for (const auto& g : cg) {
      if (count_of(seen, g) > 0) continue;
      seen.push_back(g);
      clipped += static_cast<double>(std::min(count_of(cg, g), count_of(rg, g)));
    }
    const double total = static_cast<double>(cg.size());
    const double p = n == 1 ? safe_div(clipped, total) : (clipped + 1) / (total + 1);
    if (p == 0) return 0.0;
    product *= p;
  }
  const double c = cand.size(), r = ref.size();
  const double bp = c >= r ? 1.0 : std::exp(1 - r / c);
  return bp * std::pow(product, 1.0 / max_n);
}

double meteor(const Tokens& cand, const Tokens& ref) {
  if (cand.empty() || ref.empty()) return 0.0;
  std::vector<long> match(cand.size(), -1);
  std::vector<bool> used(ref.size(), false);
  for (int stage = 0; stage < 2; ++stage) {
    auto key = [&](const std::string& w) { return stage == 0 ? w : porter_stem(w); };
    const auto before = match;
    // Occurrence rank among still-unmatched candidate tokens with the same key.
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (match[i] >= 0) continue;
      const auto k = key(cand[i]);
      std::size_t rank = 0;
      for (std::size_t p = 0; p < i; ++p) {
        if (key(cand[p]) == k && before[p] < 0) ++rank;
      }
      // Reference copies unused before this stage started.
      std::size_t seen = 0;
      for (std::size_t j = 0; j < ref.size(); ++j) {
        if (key(ref[j]) != k || used[j]) continue;
        if (seen == rank) {
          match[i] = static_cast<long>(j);
          break;
        }
        ++seen;
      }
    }
    // Mark afterwards so every rank above is relative to the stage's start.
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (match[i] >= 0) used[static_cast<std::size_t>(match[i])] = true;
    }
  }
  double m = 0, adjacent = 0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (match[i] < 0) continue;
    ++m;
    if (i + 1 < cand.size() && match[i + 1] >= 0 && match[i + 1] == match[i] + 1) ++adjacent;
  }
  if (m == 0) return 0.0;
  const double chunks = m - adjacent;
  const double p = m / cand.size();
  const double r = m / ref.size();
  const double fmean = 10 * p * r / (r + 9 * p);
  return fmean * (1 - 0.5 * std::pow(chunks / m, 3));
}

Classification classification(const std::vector<std::pair<int, int>>& pairs) {
  Counts c;
  for (auto [pred, gold] : pairs) {
    if (pred == 1 && gold == 1) ++c.tp;
    if (pred == 1 && gold == 0) ++c.fp;
    if (pred == 0 && gold == 0) ++c.tn;
    if (pred == 0 && gold == 1) ++c.fn;
  }
  Classification out{};
  out.accuracy = safe_div(c.tp + c.tn, pairs.size());
  const double p1 = safe_div(c.tp, c.tp + c.fp), r1 = safe_div(c.tp, c.tp + c.fn);
  const double p0 = safe_div(c.tn, c.tn + c.fn), r0 = safe_div(c.tn, c.tn + c.fp);
  out.bin_p = p1;
  out.bin_r = r1;
  out.bin_f1 = f1(p1, r1);
  out.macro_p = (p0 + p1) / 2;
  out.macro_r = (r0 + r1) / 2;
  out.macro_f1 = (f1(p0, r0) + f1(p1, r1)) / 2;
  return out;
}

}  // namespace bailbench::oracle
