#include "bailbench/corpus/corpus_io.hpp"

#include "bailbench/common/errors.hpp"
#include "bailbench/common/io.hpp"
#include "bailbench/common/text.hpp"

namespace bailbench {

CorpusReader::CorpusReader(const std::filesystem::path& path) : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw IoError("cannot read corpus " + path.string());
}

std::optional<std::variant<CaseRecord, LineError>> CorpusReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    auto parsed = parse_record_line(line);
    if (auto* rec = std::get_if<CaseRecord>(&parsed)) return std::variant<CaseRecord, LineError>(std::move(*rec));
    return std::variant<CaseRecord, LineError>(LineError{line_, std::get<std::string>(parsed)});
  }
  if (in_.bad()) throw IoError("read error in " + path_.string());
  return std::nullopt;
}

std::variant<CaseRecord, std::string> parse_record_line(std::string_view line) {
  try {
    auto j = nlohmann::json::parse(line);
    CaseRecord r = j.get<CaseRecord>();
    if (auto problems = validate(r); !problems.empty()) return "invalid record: " + problems.front();
    return r;
  } catch (const std::exception& e) {
    return std::string(e.what());
  }
}

CorpusLoad load_corpus(const std::filesystem::path& path) {
  CorpusLoad out;
  CorpusReader reader(path);
  while (auto item = reader.next()) {
    if (auto* rec = std::get_if<CaseRecord>(&*item)) {
      out.records.push_back(std::move(*rec));
    } else {
      out.errors.push_back(std::get<LineError>(*item));
    }
  }
  return out;
}

std::string corpus_to_jsonl(const std::vector<CaseRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    nlohmann::json j = r;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void write_jsonl(const std::filesystem::path& path, const std::vector<CaseRecord>& records) {
  write_text_file(path, corpus_to_jsonl(records));
}

}  // namespace bailbench
