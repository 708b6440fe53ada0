#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <thread>

#include "bailbench/common/hash.hpp"
#include "bailbench/common/template.hpp"
#include "bailbench/gateway/backend.hpp"
#include "bailbench/metrics/tokenize.hpp"

namespace bailbench {

namespace {

std::uint64_t hash64(std::string_view s) {
  const auto hex = sha256_hex(s);
  return std::stoull(hex.substr(0, 16), nullptr, 16);
}

// SplitMix64: a fixed, platform-independent stream for mock vectors.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53 * 2.0 - 1.0; }
};

std::optional<std::string_view> between(std::string_view s, std::string_view open, std::string_view close,
                                        bool last = false) {
  auto b = last ? s.rfind(open) : s.find(open);
  if (b == std::string_view::npos) return std::nullopt;
  b += open.size();
  auto e = s.find(close, b);
  if (e == std::string_view::npos) return std::nullopt;
  return s.substr(b, e - b);
}

double unigram_f1(std::string_view candidate, std::string_view reference) {
  const auto c = tokenize(candidate);
  const auto r = tokenize(reference);
  if (c.empty() || r.empty()) return 0.0;
  std::map<std::string, long> counts;
  for (const auto& t : r) ++counts[t];
  long overlap = 0;
  for (const auto& t : c) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  if (overlap == 0) return 0.0;
  const double p = static_cast<double>(overlap) / static_cast<double>(c.size());
  const double rc = static_cast<double>(overlap) / static_cast<double>(r.size());
  return 2 * p * rc / (p + rc);
}

std::string judge_reply(std::string_view prompt) {
  auto reference = between(prompt, "<<<REFERENCE>>>", "<<<END REFERENCE>>>");
  auto explanation = between(prompt, "<<<EXPLANATION>>>", "<<<END EXPLANATION>>>");
  const double f1 = unigram_f1(explanation.value_or(""), reference.value_or(""));
  const int score = 1 + static_cast<int>(std::lround(9.0 * f1));
  const auto s = std::to_string(score);
  char f1_text[32];
  std::snprintf(f1_text, sizeof f1_text, "%.4f", f1);
  return "Assessment: unigram overlap F1 with the reference is " + std::string(f1_text) +
         ".\nFACTUAL_ACCURACY: " + s + "\nCOMPLETENESS_COVERAGE: " + s + "\nCLARITY_COHERENCE: " + s +
         "\nOVERALL: " + s + "\n";
}

}  // namespace

MockBackend::MockBackend(EndpointConfig config) : config_(std::move(config)) {}

GenerationResult MockBackend::generate(const GenerationRequest& request) {
  struct InFlight {
    MockBackend& m;
    explicit InFlight(MockBackend& mb) : m(mb) {
      const int now = ++m.in_flight_;
      int peak = m.peak_.load();
      while (now > peak && !m.peak_.compare_exchange_weak(peak, now)) {
      }
      ++m.calls_;
    }
    ~InFlight() { --m.in_flight_; }
  } guard(*this);
  if (config_.latency_ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(config_.latency_ms));

  const std::string_view prompt = request.prompt;
  GenerationResult out;
  std::string chosen;
  std::string other;

  if (auto reply = between(prompt, "MOCK-REPLY<<<", ">>>", /*last=*/true)) {
    out.text = std::string(*reply);
    chosen = out.text.substr(0, 1);
  } else if (prompt.find("<<<REFERENCE>>>") != std::string_view::npos &&
             prompt.find("<<<EXPLANATION>>>") != std::string_view::npos) {
    out.text = judge_reply(prompt);
    chosen = out.text.substr(0, 1);
  } else {
    int digit;
    auto marker = prompt.find("OUTCOME:");
    if (marker != std::string_view::npos && marker + 8 < prompt.size() &&
        (prompt[marker + 8] == '0' || prompt[marker + 8] == '1')) {
      digit = prompt[marker + 8] - '0';
    } else {
      digit = hash64(prompt) % 100 < 60 ? 1 : 0;
    }
    if (config_.flip_percent > 0 &&
        static_cast<double>(hash64(config_.id + '\n' + std::string(prompt)) % 10000) < config_.flip_percent * 100) {
      digit = 1 - digit;
    }
    const auto reasoning = between(prompt, "REASONING-ECHO[", "]");
    const auto conditions = between(prompt, "CONDITIONS-ECHO[", "]");
    out.text = std::to_string(digit) + "\nREASONING: " +
               std::string(reasoning.value_or("The court weighed the material placed on record.")) +
               "\nCONDITIONS: " + std::string(conditions.value_or("None"));
    chosen = std::to_string(digit);
    other = std::to_string(1 - digit);
  }

  if (request.want_logprobs) {
    std::map<std::string, double> lp;
    const double hi = std::log(0.9);
    const double lo = std::log(0.1);
    if (request.candidate_tokens.empty()) {
      lp[chosen] = hi;
      if (!other.empty()) lp[other] = lo;
    } else {
      for (const auto& c : request.candidate_tokens) {
        if (c == chosen) {
          lp[c] = hi;
        } else if (other.empty() || c == other) {
          lp[c] = lo;
        } else {
          lp[c] = kLogprobFloor;
        }
      }
    }
    out.decision_logprobs = std::move(lp);
  }
  out.usage.prompt_tokens = static_cast<long long>(estimate_tokens(prompt));
  out.usage.completion_tokens = static_cast<long long>(estimate_tokens(out.text));
  return out;
}

std::vector<EmbeddingSequence> MockBackend::embed(const std::vector<std::string>& texts) {
  std::vector<EmbeddingSequence> out;
  out.reserve(texts.size());
  const auto dim = static_cast<std::size_t>(config_.embedding_dim);
  for (const auto& t : texts) {
    EmbeddingSequence seq;
    for (const auto& tok : tokenize(t)) {
      SplitMix64 rng{hash64("token:" + tok)};
      std::vector<double> v(dim);
      double norm = 0;
      for (auto& x : v) {
        x = rng.uniform();
        norm += x * x;
      }
      norm = std::sqrt(norm);
      if (norm == 0) norm = 1;
      for (auto& x : v) x /= norm;
      seq.push_back(std::move(v));
    }
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace bailbench
