#include "bailbench/gateway/judge.hpp"

#include <array>
#include <cctype>
#include <cmath>

#include "bailbench/common/assets.hpp"
#include "bailbench/common/errors.hpp"
#include "bailbench/common/template.hpp"
#include "bailbench/common/text.hpp"

namespace bailbench {

namespace {

constexpr std::string_view kRetryNote =
    "\nYour previous reply could not be read. End your reply with the four score lines exactly as shown above.\n";

enum Criterion { kFactual, kCompleteness, kClarity, kOverall, kCriterionCount };

constexpr std::array<std::string_view, kCriterionCount> kCriterionNames = {
    "factual_accuracy", "completeness_coverage", "clarity_coherence", "overall"};

std::optional<Criterion> criterion_of(std::string_view lowered_line) {
  if (lowered_line.starts_with("factual")) return kFactual;
  if (lowered_line.starts_with("complete")) return kCompleteness;
  if (lowered_line.starts_with("clarity") || lowered_line.starts_with("coheren")) return kClarity;
  if (lowered_line.starts_with("overall")) return kOverall;
  return std::nullopt;
}

// First integer after the label, with an optional sign directly before it.
std::optional<long long> score_after_label(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && !std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
  if (i == line.size()) return std::nullopt;
  std::size_t j = i;
  while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j])) && j - i < 6) ++j;
  auto v = text::parse_int(line.substr(i, j - i));
  if (!v) return std::nullopt;
  if (i > 0 && line[i - 1] == '-' && (i == 1 || line[i - 2] == ' ' || line[i - 2] == ':')) return -*v;
  return v;
}

}  // namespace

std::string render_judge_prompt(std::string_view explanation, std::string_view reference,
                                std::string_view case_summary) {
  if (text::trim(explanation).empty() || text::trim(reference).empty() || text::trim(case_summary).empty()) {
    throw PreconditionError("judge needs a non-empty explanation, reference and case summary");
  }
  return render_template(asset("prompts/judge_geval_v1.txt"),
                         {{"explanation", std::string(text::trim(explanation))},
                          {"reference", std::string(text::trim(reference))},
                          {"case_summary", std::string(text::trim(case_summary))}});
}

std::optional<JudgeVerdict> parse_judge_reply(std::string_view reply, Diagnostics* diag, std::string_view item) {
  std::array<std::optional<long long>, kCriterionCount> raw{};
  for (const auto& line_s : text::split(reply, '\n')) {
    std::string_view line = line_s;
    std::size_t k = 0;
    while (k < line.size() && !std::isalpha(static_cast<unsigned char>(line[k]))) ++k;  // "**", "- ", "1. "
    const auto lowered = text::to_lower(line.substr(k));
    auto c = criterion_of(lowered);
    if (!c) continue;
    // The label ends at the first separator; a bare prose mention does not count.
    auto sep = lowered.find_first_of(":=");
    if (sep == std::string::npos || sep > 40) continue;
    if (auto v = score_after_label(std::string_view(lowered).substr(sep + 1))) raw[*c] = v;
  }
  if (!raw[kFactual] || !raw[kCompleteness] || !raw[kClarity]) return std::nullopt;

  std::array<int, kCriterionCount> scores{};
  for (std::size_t i = 0; i < kCriterionCount; ++i) {
    if (!raw[i]) continue;
    long long v = *raw[i];
    if (v < 1 || v > 10) {
      const long long clamped = v < 1 ? 1 : 10;
      if (diag) {
        diag->warn("judge", std::string(item), std::string(kCriterionNames[i]),
                   "score " + std::to_string(v) + " clamped to " + std::to_string(clamped));
      }
      v = clamped;
    }
    scores[i] = static_cast<int>(v);
  }
  JudgeVerdict verdict;
  verdict.factual_accuracy = scores[kFactual];
  verdict.completeness_coverage = scores[kCompleteness];
  verdict.clarity_coherence = scores[kClarity];
  verdict.overall = raw[kOverall]
                        ? scores[kOverall]
                        : static_cast<int>(std::lround((scores[kFactual] + scores[kCompleteness] + scores[kClarity]) / 3.0));
  verdict.rationale = std::string(text::trim(reply));
  return verdict;
}

Result<JudgeVerdict, std::string> judge(Gateway& gateway, std::string_view endpoint_id, std::string_view explanation,
                                        std::string_view reference, std::string_view case_summary,
                                        std::string_view tag, Diagnostics* diag, const JudgeOptions& options) {
  using R = Result<JudgeVerdict, std::string>;
  const auto prompt = render_judge_prompt(explanation, reference, case_summary);
  GenerationRequest req;
  req.max_new_tokens = options.max_new_tokens;
  req.temperature = 0.0;
  std::string last;
  for (int attempt = 0; attempt <= options.retries; ++attempt) {
    req.prompt = attempt == 0 ? prompt : prompt + std::string(kRetryNote);
    try {
      auto result = gateway.generate(endpoint_id, req, tag);
      if (auto v = parse_judge_reply(result.text, diag, tag)) return R::success(std::move(*v));
      last = "unparseable judge reply";
    } catch (const GatewayError& e) {
      return R::failure(std::string("judge request failed: ") + e.what());
    }
  }
  return R::failure(last + " after " + std::to_string(options.retries + 1) + " attempts");
}

}  // namespace bailbench
