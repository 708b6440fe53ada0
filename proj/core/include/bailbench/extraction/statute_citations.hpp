#pragma once

#include <string_view>
#include <vector>

#include "bailbench/common/diagnostics.hpp"
#include "bailbench/corpus/case_record.hpp"

namespace bailbench {

// Recognizes "Section <id> <act>" items in bracketed lists and prose
// ("Sections 302 and 34 IPC", "Section 41A(b)(ii) Abkari Act"). Parenthetical
// sub-clauses stay in the section id. Exact duplicates are dropped, first
// occurrence wins. Unparseable fragments are skipped with a warning.
std::vector<StatuteCitation> parse_statute_citations(std::string_view text, Diagnostics* diag = nullptr,
                                                     std::string_view item = {});

}  // namespace bailbench
