#include "bailbench/common/diagnostics.hpp"

#include <algorithm>

#include "bailbench/common/io.hpp"

namespace bailbench {

void to_json(nlohmann::json& j, const Diagnostic& d) {
  nlohmann::ordered_json o;
  o["severity"] = d.severity == Severity::Warning ? "warning" : "error";
  o["stage"] = d.stage;
  o["item"] = d.item;
  o["field"] = d.field;
  o["message"] = d.message;
  j = o;
}

void Diagnostics::warn(std::string stage, std::string item, std::string field, std::string message) {
  entries_.push_back({Severity::Warning, std::move(stage), std::move(item), std::move(field),
                      std::move(message)});
}

void Diagnostics::error(std::string stage, std::string item, std::string field, std::string message) {
  entries_.push_back({Severity::Error, std::move(stage), std::move(item), std::move(field),
                      std::move(message)});
}

void Diagnostics::append(const Diagnostics& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

std::size_t Diagnostics::count(Severity s) const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [s](const auto& d) { return d.severity == s; }));
}

std::string Diagnostics::to_jsonl() const {
  std::string out;
  for (const auto& d : entries_) {
    nlohmann::json j = d;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void Diagnostics::write_jsonl(const std::filesystem::path& path) const {
  write_text_file(path, to_jsonl());
}

}  // namespace bailbench
