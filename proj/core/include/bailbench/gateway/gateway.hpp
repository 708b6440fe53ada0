#pragma once

#include <condition_variable>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bailbench/gateway/backend.hpp"
#include "bailbench/gateway/types.hpp"

namespace bailbench {

struct GatewayOptions {
  std::string run_id;
  // Responses persisted as <cache_dir>/<endpoint>/<hash>.json; no disk cache when empty.
  std::filesystem::path cache_dir;
  // When set, requests that miss the cache fail instead of reaching a backend.
  bool offline = false;
};

struct RequestLogEntry {
  std::string tag;  // caller-chosen, e.g. "S1/case-0007"
  std::size_t sequence = 0;
  std::string endpoint;
  std::string kind;  // "generate" | "embed"
  std::string request_hash;
  nlohmann::ordered_json request;
  nlohmann::ordered_json response;  // null on failure
  int attempts = 0;
  bool cached = false;
  std::string error;
};

using BackendFactory = std::function<std::unique_ptr<Backend>(const EndpointConfig&)>;

// Thread-safe client over a table of endpoints: per-endpoint in-flight
// window, bounded retries with backoff, response cache keyed by (endpoint,
// request hash), and a request log ordered by (tag, sequence) so it does
// not depend on thread scheduling.
class Gateway {
 public:
  explicit Gateway(std::vector<EndpointConfig> endpoints, GatewayOptions options = {},
                   BackendFactory factory = make_backend);
  ~Gateway();
  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  // Throws GatewayError after the configured attempts, or PreconditionError
  // for an invalid request or unknown endpoint.
  GenerationResult generate(std::string_view endpoint_id, const GenerationRequest& request, std::string_view tag);
  // Throws PreconditionError on an empty batch; GatewayError when vector
  // dimensions differ within the batch.
  std::vector<EmbeddingSequence> embed(std::string_view endpoint_id, const std::vector<std::string>& texts,
                                       std::string_view tag);

  bool has_endpoint(std::string_view id) const;
  const EndpointConfig& endpoint(std::string_view id) const;
  Backend& backend(std::string_view id);

  int peak_in_flight(std::string_view id) const;
  std::vector<RequestLogEntry> log() const;
  void write_log(const std::filesystem::path& path) const;
  long long cache_hits() const;

 private:
  struct Slot;
  Slot& slot(std::string_view id) const;
  std::optional<nlohmann::json> cache_get(Slot& s, const std::string& hash);
  void cache_put(Slot& s, const std::string& hash, const nlohmann::json& request, const nlohmann::json& response);
  nlohmann::json call(std::string_view endpoint_id, const std::string& kind, const nlohmann::ordered_json& request,
                      std::string_view tag, const std::function<nlohmann::json(Backend&)>& invoke);

  GatewayOptions options_;
  std::map<std::string, std::unique_ptr<Slot>, std::less<>> slots_;
  mutable std::mutex log_mutex_;
  std::vector<RequestLogEntry> log_;
  std::map<std::string, std::size_t, std::less<>> tag_sequence_;
  long long cache_hits_ = 0;
};

}  // namespace bailbench
