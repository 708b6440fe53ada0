#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace bailbench {

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Warning;
  std::string stage;    // "extraction", "corpus", "gateway", ...
  std::string item;     // case id, file name, or line reference
  std::string field;    // empty when the diagnostic concerns the whole item
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

void to_json(nlohmann::json& j, const Diagnostic& d);

// Ordered collection of structured warnings/errors. Not synchronized: each
// worker owns one and the driver appends them in a deterministic order.
class Diagnostics {
 public:
  void warn(std::string stage, std::string item, std::string field, std::string message);
  void error(std::string stage, std::string item, std::string field, std::string message);
  void add(Diagnostic d) { entries_.push_back(std::move(d)); }
  void append(const Diagnostics& other);

  const std::vector<Diagnostic>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t count(Severity s) const;

  // One JSON object per line.
  std::string to_jsonl() const;
  void write_jsonl(const std::filesystem::path& path) const;

 private:
  std::vector<Diagnostic> entries_;
};

}  // namespace bailbench
