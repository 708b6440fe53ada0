#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bailbench {

// Text assets (prompt templates, keyword tables) compiled into the library
// from core/data/. Throws std::out_of_range for unknown names.
std::string_view asset(std::string_view name);
std::vector<std::string> asset_names();

}  // namespace bailbench
