#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bailbench/corpus/case_record.hpp"

namespace bailbench {

struct LineError {
  std::size_t line = 0;
  std::string message;
  bool operator==(const LineError&) const = default;
};

// Streams CaseRecords from a JSONL file in file order. Blank lines are
// skipped; malformed lines surface as LineError entries.
class CorpusReader {
 public:
  // Throws IoError when the file cannot be opened.
  explicit CorpusReader(const std::filesystem::path& path);

  // nullopt at end of file.
  std::optional<std::variant<CaseRecord, LineError>> next();

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t line_ = 0;
};

struct CorpusLoad {
  std::vector<CaseRecord> records;
  std::vector<LineError> errors;
};

CorpusLoad load_corpus(const std::filesystem::path& path);

// Parses one JSONL line; failures carry the reason.
std::variant<CaseRecord, std::string> parse_record_line(std::string_view line);

std::string corpus_to_jsonl(const std::vector<CaseRecord>& records);
void write_jsonl(const std::filesystem::path& path, const std::vector<CaseRecord>& records);

}  // namespace bailbench
