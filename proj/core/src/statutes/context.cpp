#include "bailbench/statutes/context.hpp"

#include <algorithm>
#include <cctype>

#include "bailbench/common/errors.hpp"
#include "bailbench/common/template.hpp"

namespace bailbench {

namespace {

constexpr std::string_view kTruncationMarker = " [...]";

// Offsets just past each sentence end ('.', '?', '!', ';' before
// whitespace, or a line break), ascending.
std::vector<std::size_t> sentence_ends(std::string_view body) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    const bool at_end = i + 1 == body.size();
    const bool before_space = !at_end && std::isspace(static_cast<unsigned char>(body[i + 1]));
    if ((c == '.' || c == '?' || c == '!' || c == ';') && (at_end || before_space)) {
      out.push_back(i + 1);
    } else if (c == '\n' && i > 0 && body[i - 1] != '\n') {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace

std::string render_entry(const ContextEntry& e) {
  std::string out = e.citation.to_string();
  if (e.status == Resolution::Fuzzy && e.resolved_section) out += " (parent section " + *e.resolved_section + ")";
  if (e.heading) out += ": " + *e.heading;
  if (e.status == Resolution::Miss) return out + "\n[text not available]";
  if (e.shared) return out + "\n[same text as above]";
  return out + "\n" + e.text;
}

std::string ContextBlock::render() const {
  std::string out;
  for (const auto& e : entries) {
    if (!out.empty()) out += "\n\n";
    out += render_entry(e);
  }
  return out;
}

ContextBlock assemble_context(std::span<const StatuteCitation> citations, const StatuteIndex& index,
                              std::size_t budget) {
  if (budget == 0) throw PreconditionError("context budget must be positive");
  ContextBlock block;
  std::size_t remaining = budget;
  std::vector<const StatuteSection*> used;

  for (std::size_t i = 0; i < citations.size(); ++i) {
    ContextEntry e;
    e.citation = citations[i];
    auto resolved = index.resolve(e.citation);
    e.status = resolved.status;
    const StatuteSection* sec = resolved.section;
    if (sec) {
      if (e.status == Resolution::Fuzzy) e.resolved_section = sec->section_id;
      e.heading = sec->heading;
      e.shared = std::find(used.begin(), used.end(), sec) != used.end();
      if (!e.shared) e.text = sec->body;
    }
    e.tokens = estimate_tokens(render_entry(e));
    if (e.tokens <= remaining) {
      remaining -= e.tokens;
      block.token_estimate += e.tokens;
      if (sec && !e.shared) used.push_back(sec);
      block.entries.push_back(std::move(e));
      continue;
    }

    // Does not fit: keep the longest sentence-aligned prefix that does.
    if (sec && !e.shared) {
      const auto ends = sentence_ends(sec->body);
      auto tokens_for = [&](std::size_t cut) {
        e.text = std::string(sec->body.substr(0, cut)) + std::string(kTruncationMarker);
        return estimate_tokens(render_entry(e));
      };
      // Prefix token counts grow with the cut, so binary search the largest fit.
      std::size_t lo = 0, hi = ends.size();
      while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (ends[mid] < sec->body.size() && tokens_for(ends[mid]) <= remaining) {
          lo = mid + 1;
        } else {
          hi = mid;
        }
      }
      if (lo > 0) {
        e.tokens = tokens_for(ends[lo - 1]);
        e.truncated = true;
        block.token_estimate += e.tokens;
        block.entries.push_back(std::move(e));
        block.omitted = citations.size() - i - 1;
        return block;
      }
    }
    block.omitted = citations.size() - i;
    return block;
  }
  return block;
}

}  // namespace bailbench
