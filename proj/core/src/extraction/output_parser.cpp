#include "bailbench/extraction/output_parser.hpp"

#include <array>

#include "bailbench/common/text.hpp"
#include "bailbench/extraction/lenient_object.hpp"

namespace bailbench {

std::string_view to_string(DiscardReason r) {
  switch (r) {
    case DiscardReason::MissingIncident: return "MissingIncident";
    case DiscardReason::MissingStatutes: return "MissingStatutes";
    case DiscardReason::MissingReasoning: return "MissingReasoning";
    case DiscardReason::MissingOutcome: return "MissingOutcome";
    case DiscardReason::UnparseableOutput: return "UnparseableOutput";
  }
  return "?";
}

namespace {

constexpr std::size_t kMaxObjectAttempts = 32;

// Region to search for the object: the ```json block when present, else
// any fenced block containing a brace, else the whole reply.
std::string_view locate_region(std::string_view out) {
  auto fence = text::ifind(out, "```json");
  std::size_t body = std::string_view::npos;
  if (fence != std::string_view::npos) {
    body = fence + 7;
  } else {
    auto plain = out.find("```");
    while (plain != std::string_view::npos) {
      auto close = out.find("```", plain + 3);
      auto inner = out.substr(plain + 3, close == std::string_view::npos ? std::string_view::npos : close - plain - 3);
      if (inner.find('{') != std::string_view::npos) {
        body = plain + 3;
        break;
      }
      if (close == std::string_view::npos) break;
      plain = out.find("```", close + 3);
    }
  }
  if (body == std::string_view::npos) return out;
  auto close = out.find("```", body);
  return out.substr(body, close == std::string_view::npos ? std::string_view::npos : close - body);
}

// Canonical field name for a key, or empty when it is not one of the five.
std::string_view canonical_key(std::string_view key) {
  auto k = text::to_lower(text::trim(key));
  for (auto& c : k)
    if (c == ' ' || c == '-') c = '_';
  if (k == "case" || k == "case_narrative") return "case";
  if (k == "outcome") return "outcome";
  if (k == "reasoning") return "reasoning";
  if (k == "date_of_arrest") return "date_of_arrest";
  if (k == "date_of_judgement" || k == "date_of_judgment") return "date_of_judgement";
  return {};
}

std::optional<ExtractedCase> fields_from(const LenientObject& obj, std::string& missing) {
  constexpr std::array<std::string_view, 5> kFields = {"case", "outcome", "reasoning", "date_of_arrest",
                                                       "date_of_judgement"};
  std::array<const std::string*, 5> found{};
  for (const auto& [key, value] : obj.fields) {
    auto canon = canonical_key(key);
    for (std::size_t i = 0; i < kFields.size(); ++i)
      if (canon == kFields[i]) found[i] = &value;
  }
  for (std::size_t i = 0; i < kFields.size(); ++i) {
    if (!found[i]) {
      missing = kFields[i];
      return std::nullopt;
    }
  }
  auto clean = [](const std::string* v) { return std::string(text::trim(*v)); };
  return ExtractedCase{clean(found[0]), clean(found[1]), clean(found[2]), clean(found[3]), clean(found[4])};
}

}  // namespace

Result<ExtractedCase, ExtractionFailure> parse_extraction_output(std::string_view model_output) {
  using R = Result<ExtractedCase, ExtractionFailure>;
  const auto region = locate_region(model_output);

  std::string last_error = "no JSON object found";
  std::size_t attempts = 0;
  for (auto open = region.find('{'); open != std::string_view::npos && attempts < kMaxObjectAttempts;
       open = region.find('{', open + 1), ++attempts) {
    std::string err;
    auto obj = parse_lenient_object(region, open, &err);
    if (!obj) {
      last_error = "malformed object: " + err;
      continue;
    }
    std::string missing;
    if (auto extracted = fields_from(*obj, missing)) return R::success(std::move(*extracted));
    last_error = "missing top-level field '" + missing + "'";
  }
  return R::failure({DiscardReason::UnparseableOutput, last_error});
}

}  // namespace bailbench
