#include "config.hpp"

#include <set>

#include "bailbench/common/errors.hpp"
#include "bailbench/common/io.hpp"

namespace bailbench::cli {

namespace {

const std::set<std::string, std::less<>> kTopKeys = {
    "output_dir", "raw_dir",   "default_court", "corpus_path", "statutes_dir", "cache_dir", "offline",
    "endpoints",  "roles",     "extraction",    "prediction",  "evaluation",   "stats"};
const std::set<std::string, std::less<>> kRoles = {"extraction", "vanilla", "ft1", "ft2",
                                                   "embedder",   "judge",   "crime_classifier"};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return {};
  std::filesystem::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

template <class T>
void read(const nlohmann::json& obj, const char* key, T& out, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return;
  try {
    out = it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(where + key + ": wrong type");
  }
}

void check_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError("unknown key " + where + k);
  }
}

}  // namespace

std::optional<std::string> RunConfig::role(std::string_view name) const {
  auto it = roles.find(name);
  if (it == roles.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [k, v] : doc.items()) {
    if (!kTopKeys.count(k)) throw ConfigError("unknown key " + k);
  }
  RunConfig c;
  std::string s;
  s.clear();
  read(doc, "output_dir", s, "");
  if (!s.empty()) c.output_dir = resolve(base_dir, s);
  else c.output_dir = resolve(base_dir, "runs");
  s.clear();
  read(doc, "raw_dir", s, "");
  c.raw_dir = resolve(base_dir, s);
  read(doc, "default_court", c.default_court, "");
  s.clear();
  read(doc, "corpus_path", s, "");
  c.corpus_path = resolve(base_dir, s);
  s.clear();
  read(doc, "statutes_dir", s, "");
  c.statutes_dir = resolve(base_dir, s);
  s.clear();
  read(doc, "cache_dir", s, "");
  c.cache_dir = resolve(base_dir, s);
  read(doc, "offline", c.offline, "");

  if (auto it = doc.find("endpoints"); it != doc.end()) {
    if (!it->is_object()) throw ConfigError("endpoints must be an object keyed by endpoint id");
    for (const auto& [id, e] : it->items()) c.endpoints.push_back(endpoint_from_json(id, e));
  }
  if (auto it = doc.find("roles"); it != doc.end()) {
    if (!it->is_object()) throw ConfigError("roles must be an object");
    for (const auto& [role, id] : it->items()) {
      if (!kRoles.count(role)) throw ConfigError("unknown role roles." + role);
      if (!id.is_string()) throw ConfigError("roles." + role + " must be an endpoint id");
      const auto name = id.get<std::string>();
      bool known = false;
      for (const auto& e : c.endpoints) known = known || e.id == name;
      if (!known) throw ConfigError("roles." + role + " names undefined endpoint '" + name + "'");
      c.roles[role] = name;
    }
  }

  if (auto it = doc.find("extraction"); it != doc.end()) {
    check_keys(*it, {"budget", "max_new_tokens"}, "extraction.");
    read(*it, "budget", c.extraction_budget, "extraction.");
    read(*it, "max_new_tokens", c.extraction_max_new_tokens, "extraction.");
  }
  if (auto it = doc.find("prediction"); it != doc.end()) {
    check_keys(*it, {"context_budget", "prompt_budget", "max_new_tokens", "temperature", "max_item_error_rate"},
               "prediction.");
    read(*it, "context_budget", c.context_budget, "prediction.");
    read(*it, "prompt_budget", c.prompt_budget, "prediction.");
    read(*it, "max_new_tokens", c.max_new_tokens, "prediction.");
    read(*it, "temperature", c.temperature, "prediction.");
    read(*it, "max_item_error_rate", c.max_item_error_rate, "prediction.");
  }
  if (auto it = doc.find("evaluation"); it != doc.end()) {
    check_keys(*it, {"averaging", "bertscore_baseline"}, "evaluation.");
    std::string mode = "macro";
    read(*it, "averaging", mode, "evaluation.");
    if (mode == "macro") c.averaging = Averaging::Macro;
    else if (mode == "binary") c.averaging = Averaging::Binary;
    else throw ConfigError("evaluation.averaging must be \"macro\" or \"binary\"");
    double b = 0.0;
    if (it->contains("bertscore_baseline") && !(*it)["bertscore_baseline"].is_null()) {
      read(*it, "bertscore_baseline", b, "evaluation.");
      if (!(b < 1.0)) throw ConfigError("evaluation.bertscore_baseline must be below 1");
      c.bertscore_baseline = b;
    }
  }
  if (auto it = doc.find("stats"); it != doc.end()) {
    check_keys(*it, {"include_withdrawn", "crime_keywords"}, "stats.");
    read(*it, "include_withdrawn", c.include_withdrawn, "stats.");
    s.clear();
    read(*it, "crime_keywords", s, "stats.");
    c.crime_keywords = resolve(base_dir, s);
  }

  if (c.context_budget == 0) throw ConfigError("prediction.context_budget must be positive");
  if (c.extraction_budget == 0) throw ConfigError("extraction.budget must be positive");
  if (c.max_item_error_rate < 0.0 || c.max_item_error_rate > 1.0) {
    throw ConfigError("prediction.max_item_error_rate must lie in [0, 1]");
  }
  if (c.max_new_tokens <= 0 || c.extraction_max_new_tokens <= 0) throw ConfigError("max_new_tokens must be positive");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const IoError& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  auto c = parse_config(doc, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
  c.source = path;
  return c;
}

nlohmann::ordered_json RunConfig::snapshot() const {
  nlohmann::ordered_json j;
  auto str = [](const std::filesystem::path& p) { return p.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(p.generic_string()); };
  j["schema"] = "bailbench.config_snapshot/1";
  j["raw_dir"] = str(raw_dir);
  j["default_court"] = default_court;
  j["corpus_path"] = str(corpus_path);
  j["statutes_dir"] = str(statutes_dir);
  j["offline"] = offline;
  j["endpoints"] = nlohmann::ordered_json::object();
  for (const auto& e : endpoints) j["endpoints"][e.id] = endpoint_to_json(e);
  j["roles"] = nlohmann::ordered_json::object();
  for (const auto& [r, id] : roles) j["roles"][r] = id;
  j["extraction"] = {{"budget", extraction_budget}, {"max_new_tokens", extraction_max_new_tokens}};
  j["prediction"] = {{"context_budget", context_budget},
                     {"prompt_budget", prompt_budget},
                     {"max_new_tokens", max_new_tokens},
                     {"temperature", temperature},
                     {"max_item_error_rate", max_item_error_rate}};
  j["evaluation"] = {{"averaging", to_string(averaging)},
                     {"bertscore_baseline",
                      bertscore_baseline ? nlohmann::ordered_json(*bertscore_baseline) : nlohmann::ordered_json(nullptr)}};
  j["stats"] = {{"include_withdrawn", include_withdrawn}, {"crime_keywords", str(crime_keywords)}};
  return j;
}

}  // namespace bailbench::cli
