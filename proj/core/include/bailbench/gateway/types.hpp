#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace bailbench {

// Log-probability reported for a candidate token the model did not rank.
inline constexpr double kLogprobFloor = -100.0;

struct GenerationRequest {
  std::string prompt;
  int max_new_tokens = 256;
  double temperature = 0.0;
  bool want_logprobs = false;
  std::vector<std::string> candidate_tokens;  // reported at the first generated position

  // Throws PreconditionError when max_new_tokens < 1 or temperature < 0.
  void validate() const;
  bool operator==(const GenerationRequest&) const = default;
};

struct Usage {
  long long prompt_tokens = 0;
  long long completion_tokens = 0;
  bool operator==(const Usage&) const = default;
};

struct GenerationResult {
  std::string text;
  std::optional<std::map<std::string, double>> decision_logprobs;
  Usage usage;
  bool operator==(const GenerationResult&) const = default;
};

// One vector per token of one input text.
using EmbeddingSequence = std::vector<std::vector<double>>;

struct JudgeVerdict {
  int factual_accuracy = 1;
  int completeness_coverage = 1;
  int clarity_coherence = 1;
  int overall = 1;
  std::string rationale;
  bool operator==(const JudgeVerdict&) const = default;
};

enum class BackendKind { Mock, Http };

// One model endpoint. URL and key may come from environment variables
// named here so secrets stay out of config files.
struct EndpointConfig {
  std::string id;
  BackendKind kind = BackendKind::Mock;
  std::string model;
  std::string base_url;
  std::string base_url_env;
  std::string api_key_env;
  int max_in_flight = 4;
  int max_attempts = 3;
  int timeout_ms = 60000;
  int backoff_ms = 200;
  // Mock only: share of decisions flipped (0..100), embedding size, and
  // artificial latency that makes concurrency observable in tests.
  double flip_percent = 0.0;
  int embedding_dim = 32;
  int latency_ms = 0;
};

// Throws ConfigError on unknown kinds or out-of-range numbers.
EndpointConfig endpoint_from_json(const std::string& id, const nlohmann::json& j);
nlohmann::ordered_json endpoint_to_json(const EndpointConfig& e);

class GatewayError : public std::runtime_error {
 public:
  GatewayError(const std::string& what, bool retryable) : std::runtime_error(what), retryable_(retryable) {}
  bool retryable() const noexcept { return retryable_; }

 private:
  bool retryable_;
};

nlohmann::ordered_json to_json(const GenerationRequest& r);
nlohmann::ordered_json to_json(const GenerationResult& r);
GenerationResult generation_result_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const JudgeVerdict& v);
JudgeVerdict judge_verdict_from_json(const nlohmann::json& j);

}  // namespace bailbench
