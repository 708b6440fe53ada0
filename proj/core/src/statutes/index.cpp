#include "bailbench/statutes/index.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "bailbench/common/assets.hpp"
#include "bailbench/common/errors.hpp"
#include "bailbench/common/io.hpp"
#include "bailbench/common/text.hpp"

namespace bailbench {

void to_json(nlohmann::json& j, const StatuteSection& s) {
  j = nlohmann::ordered_json{{"act", s.act},
                             {"section_id", s.section_id},
                             {"heading", s.heading ? nlohmann::json(*s.heading) : nlohmann::json(nullptr)},
                             {"body", s.body},
                             {"source", s.source}};
}

void from_json(const nlohmann::json& j, StatuteSection& s) {
  j.at("act").get_to(s.act);
  j.at("section_id").get_to(s.section_id);
  auto h = j.find("heading");
  s.heading = (h == j.end() || h->is_null()) ? std::nullopt : std::optional<std::string>(h->get<std::string>());
  j.at("body").get_to(s.body);
  s.source = j.value("source", std::string{});
}

std::string normalize_statute_token(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '.' || std::isspace(static_cast<unsigned char>(c))) continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

ActAliases ActAliases::parse_tsv(std::string_view tsv) {
  ActAliases a;
  std::size_t line_no = 0;
  for (const auto& raw : text::split(tsv, '\n')) {
    ++line_no;
    auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw std::invalid_argument("act alias line " + std::to_string(line_no) + ": missing tab");
    }
    a.add(line.substr(0, tab), line.substr(tab + 1));
  }
  return a;
}

const ActAliases& ActAliases::builtin() {
  static const ActAliases aliases = parse_tsv(asset("act_aliases.tsv"));
  return aliases;
}

void ActAliases::add(std::string_view alias, std::string_view canonical) {
  map_[normalize_statute_token(alias)] = normalize_statute_token(canonical);
}

std::string ActAliases::canonical_key(std::string_view act) const {
  auto key = normalize_statute_token(act);
  auto it = map_.find(key);
  return it == map_.end() ? key : it->second;
}

std::string_view to_string(Resolution r) {
  switch (r) {
    case Resolution::Exact: return "Exact";
    case Resolution::Fuzzy: return "Fuzzy";
    case Resolution::Miss: return "Miss";
  }
  return "?";
}

StatuteIndex::StatuteIndex(ActAliases aliases) : aliases_(std::move(aliases)) {}

StatuteIndex::Key StatuteIndex::key_for(std::string_view act, std::string_view section_id) const {
  return {aliases_.canonical_key(act), normalize_statute_token(section_id)};
}

void StatuteIndex::insert(StatuteSection section, Diagnostics* diag) {
  auto key = key_for(section.act, section.section_id);
  auto it = sections_.find(key);
  if (it != sections_.end()) {
    if (diag) {
      diag->warn("statutes", section.source, "section",
                 "duplicate " + section.act + " section " + section.section_id + " replaces the one from " +
                     it->second.source);
    }
    it->second = std::move(section);
    return;
  }
  sections_.emplace(std::move(key), std::move(section));
}

std::vector<const StatuteSection*> StatuteIndex::sections() const {
  std::vector<const StatuteSection*> out;
  out.reserve(sections_.size());
  for (const auto& [k, v] : sections_) out.push_back(&v);
  return out;
}

const StatuteSection* StatuteIndex::find(std::string_view act, std::string_view section_id) const {
  auto it = sections_.find(key_for(act, section_id));
  return it == sections_.end() ? nullptr : &it->second;
}

ResolvedCitation StatuteIndex::resolve(const StatuteCitation& c) const {
  auto key = key_for(c.act, c.section);
  if (auto it = sections_.find(key); it != sections_.end()) return {Resolution::Exact, &it->second};
  auto& id = key.second;
  while (!id.empty() && id.back() == ')') {
    auto open = id.rfind('(');
    if (open == std::string::npos || open == 0) break;
    id.erase(open);
    if (auto it = sections_.find(key); it != sections_.end()) return {Resolution::Fuzzy, &it->second};
  }
  return {};
}

namespace {

std::set<std::string> keywords(std::string_view s) {
  std::set<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.size() >= 3) out.insert(cur);
    cur.clear();
  };
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

}  // namespace

std::vector<const StatuteSection*> StatuteIndex::search_act(std::string_view act, std::string_view query,
                                                            std::size_t limit) const {
  const auto act_key = aliases_.canonical_key(act);
  const auto q = keywords(query);
  std::vector<std::pair<std::size_t, const StatuteSection*>> scored;
  for (auto it = sections_.lower_bound({act_key, ""}); it != sections_.end() && it->first.first == act_key; ++it) {
    const auto& s = it->second;
    std::size_t score = 0;
    for (const auto& w : keywords(s.heading.value_or("") + " " + s.body)) score += q.count(w);
    if (score > 0) scored.emplace_back(score, &s);
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<const StatuteSection*> out;
  for (std::size_t i = 0; i < scored.size() && i < limit; ++i) out.push_back(scored[i].second);
  return out;
}

nlohmann::ordered_json StatuteIndex::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "bailbench.statute_index/1";
  j["sections"] = nlohmann::ordered_json::array();
  for (const auto& [k, s] : sections_) {
    j["sections"].push_back(nlohmann::ordered_json{{"act", s.act},
                                                   {"section_id", s.section_id},
                                                   {"heading", s.heading ? nlohmann::ordered_json(*s.heading)
                                                                         : nlohmann::ordered_json(nullptr)},
                                                   {"body", s.body},
                                                   {"source", s.source}});
  }
  return j;
}

StatuteIndex StatuteIndex::from_json(const nlohmann::json& j, ActAliases aliases) {
  StatuteIndex index(std::move(aliases));
  for (const auto& s : j.at("sections")) index.insert(s.get<StatuteSection>());
  return index;
}

void StatuteIndex::save(const std::filesystem::path& path) const { write_text_file(path, dump_pretty(to_json())); }

StatuteIndex StatuteIndex::load(const std::filesystem::path& path, ActAliases aliases) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError("statute index " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(j, std::move(aliases));
}

std::vector<StatuteSection> parse_statute_file(std::string_view content, std::string_view source, Diagnostics* diag) {
  std::vector<StatuteSection> out;
  std::optional<StatuteSection> current;
  std::string body;
  auto finish = [&] {
    if (!current) return;
    auto b = text::trim(body);
    if (b.empty()) {
      if (diag) diag->warn("statutes", current->source, "body", "section " + current->section_id + " has no text");
    } else {
      current->body = std::string(b);
      out.push_back(std::move(*current));
    }
    current.reset();
    body.clear();
  };

  std::size_t line_no = 0;
  for (const auto& raw : text::split(content, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.starts_with("## ")) {
      auto parts = text::split(line.substr(3), '|');
      const auto where = std::string(source) + ":" + std::to_string(line_no);
      if (parts.size() < 2 || text::trim(parts[0]).empty() || text::trim(parts[1]).empty()) {
        if (diag) diag->warn("statutes", where, "header", "malformed section header");
        continue;
      }
      finish();
      StatuteSection s;
      s.act = std::string(text::trim(parts[0]));
      s.section_id = std::string(text::trim(parts[1]));
      if (parts.size() >= 3) {
        std::vector<std::string> rest(parts.begin() + 2, parts.end());
        auto heading = std::string(text::trim(text::join(rest, "|")));
        if (!heading.empty()) s.heading = std::move(heading);
      }
      s.source = where;
      current = std::move(s);
      continue;
    }
    if (current) {
      body.append(line);
      body += '\n';
    }
  }
  finish();
  return out;
}

StatuteIndex ingest_statutes(const std::filesystem::path& dir, Diagnostics* diag, ActAliases aliases) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw IoError("statute directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());

  StatuteIndex index(std::move(aliases));
  for (const auto& f : files) {
    auto sections = parse_statute_file(read_text_file(f), f.filename().string(), diag);
    if (sections.empty()) {
      if (diag) diag->error("statutes", f.filename().string(), "", "no recognizable sections");
      continue;
    }
    for (auto& s : sections) index.insert(std::move(s), diag);
  }
  return index;
}

}  // namespace bailbench
