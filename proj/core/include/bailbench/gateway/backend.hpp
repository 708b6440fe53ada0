#pragma once

#include <atomic>
#include <memory>
#include <string>
#include <vector>

#include "bailbench/gateway/types.hpp"

namespace bailbench {

class Backend {
 public:
  virtual ~Backend() = default;
  // Throws GatewayError; retryable() tells transient failures apart.
  virtual GenerationResult generate(const GenerationRequest& request) = 0;
  virtual std::vector<EmbeddingSequence> embed(const std::vector<std::string>& texts) = 0;
};

// Deterministic offline backend; every reply is a pure function of the
// request and the endpoint settings.
//
// Generation, in order of precedence:
//   MOCK-REPLY<<<text>>>   the last such segment is returned verbatim
//   judge prompts          (<<<REFERENCE>>> and <<<EXPLANATION>>> blocks)
//                          score 1 + round(9 * unigram F1) on every criterion
//   otherwise              a decision digit, from "OUTCOME:<0|1>" if present
//                          or a prompt hash (1 with probability 0.6), then
//                          "REASONING: " + the REASONING-ECHO[...] text and
//                          "CONDITIONS: " + the CONDITIONS-ECHO[...] text.
// The chosen digit has logprob ln 0.9 and the other ln 0.1; flip_percent
// flips a deterministic share of decisions. Embeddings are unit vectors
// seeded by a hash of each token.
class MockBackend final : public Backend {
 public:
  explicit MockBackend(EndpointConfig config);

  GenerationResult generate(const GenerationRequest& request) override;
  std::vector<EmbeddingSequence> embed(const std::vector<std::string>& texts) override;

  int peak_in_flight() const noexcept { return peak_.load(); }
  long long calls() const noexcept { return calls_.load(); }

 private:
  EndpointConfig config_;
  std::atomic<int> in_flight_{0};
  std::atomic<int> peak_{0};
  std::atomic<long long> calls_{0};
};

// OpenAI-style completions over HTTP(S); wire format in docs/wire_protocol.md.
class HttpBackend final : public Backend {
 public:
  // Resolves base_url/api key (environment first when *_env is set).
  // Throws ConfigError when no base URL is available.
  explicit HttpBackend(EndpointConfig config);

  GenerationResult generate(const GenerationRequest& request) override;
  std::vector<EmbeddingSequence> embed(const std::vector<std::string>& texts) override;

 private:
  nlohmann::json post(const std::string& path, const nlohmann::json& body);

  EndpointConfig config_;
  std::string base_url_;
  std::string api_key_;
};

std::unique_ptr<Backend> make_backend(const EndpointConfig& config);

// Wire helpers shared by the HTTP backend and tests.
nlohmann::json completion_request_body(const EndpointConfig& config, const GenerationRequest& request);
// Throws GatewayError (not retryable) when the reply does not follow the contract.
GenerationResult parse_completion_response(const nlohmann::json& reply, const GenerationRequest& request);
std::vector<EmbeddingSequence> parse_embedding_response(const nlohmann::json& reply, std::size_t expected);

}  // namespace bailbench
