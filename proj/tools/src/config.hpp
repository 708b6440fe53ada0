#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bailbench/gateway/types.hpp"
#include "bailbench/metrics/classification.hpp"

namespace bailbench::cli {

// Everything a run needs. Relative paths in the file resolve against the
// directory holding the config file.
struct RunConfig {
  std::filesystem::path source;  // the config file itself

  std::filesystem::path output_dir = "runs";
  std::filesystem::path raw_dir;        // plain-text judgments for `extract`
  std::string default_court = "unknown";
  std::filesystem::path corpus_path;    // overrides <run>/clean/corpus.jsonl
  std::filesystem::path statutes_dir;
  std::filesystem::path cache_dir;      // default <run>/cache
  bool offline = false;

  std::vector<EndpointConfig> endpoints;
  std::map<std::string, std::string, std::less<>> roles;  // role -> endpoint id

  std::size_t extraction_budget = 12000;
  int extraction_max_new_tokens = 2048;
  std::size_t context_budget = 2048;
  std::size_t prompt_budget = 0;
  int max_new_tokens = 512;
  double temperature = 0.0;
  double max_item_error_rate = 0.10;

  Averaging averaging = Averaging::Macro;
  std::optional<double> bertscore_baseline;

  bool include_withdrawn = false;
  std::filesystem::path crime_keywords;  // default: built-in table

  std::optional<std::string> role(std::string_view name) const;
  nlohmann::ordered_json snapshot() const;
};

// Throws ConfigError with the offending key on any schema problem.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace bailbench::cli
