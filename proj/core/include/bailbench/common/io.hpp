#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace bailbench {

std::string read_text_file(const std::filesystem::path& path);

// Writes via a sibling temp file and rename; creates parent directories.
// Throws IoError when the destination is not writable.
void write_text_file(const std::filesystem::path& path, std::string_view content);

// Calls fn(line_number, line) for each line (1-based, newline stripped,
// trailing '\r' removed). Throws IoError when the file cannot be opened.
void for_each_line(const std::filesystem::path& path,
                   const std::function<void(std::size_t, std::string_view)>& fn);

std::string to_jsonl(const std::vector<nlohmann::json>& rows);

// Stable pretty form used for every JSON artifact we write.
std::string dump_pretty(const nlohmann::ordered_json& doc);

}  // namespace bailbench
