#include "bailbench/common/assets.hpp"

#include <map>
#include <stdexcept>

namespace bailbench {
namespace detail {
const std::map<std::string, std::string_view, std::less<>>& asset_table();
}

std::string_view asset(std::string_view name) {
  const auto& table = detail::asset_table();
  auto it = table.find(name);
  if (it == table.end()) throw std::out_of_range("unknown asset: " + std::string(name));
  return it->second;
}

std::vector<std::string> asset_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : detail::asset_table()) names.push_back(k);
  return names;
}

}  // namespace bailbench
