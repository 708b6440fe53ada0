#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bailbench/corpus/case_record.hpp"
#include "bailbench/statutes/index.hpp"

namespace bailbench {

inline constexpr std::size_t kDefaultContextBudget = 2048;

struct ContextEntry {
  StatuteCitation citation;
  Resolution status = Resolution::Miss;
  std::optional<std::string> resolved_section;  // differs from the cited id when Fuzzy
  std::optional<std::string> heading;
  std::string text;        // empty for a Miss or a repeat of an earlier section
  bool truncated = false;
  bool shared = false;     // same section as an earlier entry
  std::size_t tokens = 0;  // estimate of render_entry(*this)

  bool operator==(const ContextEntry&) const = default;
};

struct ContextBlock {
  std::vector<ContextEntry> entries;  // a prefix of the citation list, in order
  std::size_t token_estimate = 0;     // sum of entry tokens
  std::size_t omitted = 0;            // citations dropped once the budget ran out

  bool empty() const noexcept { return entries.empty(); }
  std::string render() const;
};

std::string render_entry(const ContextEntry& e);

// Appends resolved sections in citation order while they fit. The first
// section that does not fit is cut at the last sentence boundary that
// does, marked " [...]"; everything after it is omitted. Throws
// PreconditionError when budget is 0.
ContextBlock assemble_context(std::span<const StatuteCitation> citations, const StatuteIndex& index,
                              std::size_t budget = kDefaultContextBudget);

}  // namespace bailbench
