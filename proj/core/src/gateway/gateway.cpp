#include "bailbench/gateway/gateway.hpp"

#include <algorithm>
#include <fstream>
#include <thread>

#include "bailbench/common/errors.hpp"
#include "bailbench/common/hash.hpp"
#include "bailbench/common/io.hpp"

namespace bailbench {

struct Gateway::Slot {
  EndpointConfig config;
  std::unique_ptr<Backend> backend;
  std::mutex mutex;
  std::condition_variable cv;
  int in_flight = 0;
  int peak = 0;
  std::map<std::string, nlohmann::json> memory_cache;
};

Gateway::Gateway(std::vector<EndpointConfig> endpoints, GatewayOptions options, BackendFactory factory)
    : options_(std::move(options)) {
  for (auto& e : endpoints) {
    if (e.id.empty()) throw ConfigError("endpoint without an id");
    if (slots_.count(e.id)) throw ConfigError("duplicate endpoint id " + e.id);
    auto slot = std::make_unique<Slot>();
    slot->backend = factory(e);
    slot->config = std::move(e);
    slots_.emplace(slot->config.id, std::move(slot));
  }
}

Gateway::~Gateway() = default;

Gateway::Slot& Gateway::slot(std::string_view id) const {
  auto it = slots_.find(id);
  if (it == slots_.end()) throw PreconditionError("unknown endpoint '" + std::string(id) + "'");
  return *it->second;
}

bool Gateway::has_endpoint(std::string_view id) const { return slots_.find(id) != slots_.end(); }
const EndpointConfig& Gateway::endpoint(std::string_view id) const { return slot(id).config; }
Backend& Gateway::backend(std::string_view id) { return *slot(id).backend; }

int Gateway::peak_in_flight(std::string_view id) const {
  auto& s = slot(id);
  std::lock_guard lock(s.mutex);
  return s.peak;
}

long long Gateway::cache_hits() const {
  std::lock_guard lock(log_mutex_);
  return cache_hits_;
}

std::optional<nlohmann::json> Gateway::cache_get(Slot& s, const std::string& hash) {
  {
    std::lock_guard lock(s.mutex);
    if (auto it = s.memory_cache.find(hash); it != s.memory_cache.end()) return it->second;
  }
  if (options_.cache_dir.empty()) return std::nullopt;
  const auto path = options_.cache_dir / s.config.id / (hash + ".json");
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    auto doc = nlohmann::json::parse(in);
    if (doc.contains("response")) return doc["response"];
  } catch (const nlohmann::json::exception&) {
  }
  return std::nullopt;
}

void Gateway::cache_put(Slot& s, const std::string& hash, const nlohmann::json& request,
                        const nlohmann::json& response) {
  {
    std::lock_guard lock(s.mutex);
    s.memory_cache[hash] = response;
  }
  if (options_.cache_dir.empty()) return;
  nlohmann::json doc{{"endpoint", s.config.id}, {"request", request}, {"response", response}};
  write_text_file(options_.cache_dir / s.config.id / (hash + ".json"), doc.dump() + "\n");
}

nlohmann::json Gateway::call(std::string_view endpoint_id, const std::string& kind,
                             const nlohmann::ordered_json& request, std::string_view tag,
                             const std::function<nlohmann::json(Backend&)>& invoke) {
  auto& s = slot(endpoint_id);
  RequestLogEntry entry;
  entry.tag = std::string(tag);
  entry.endpoint = s.config.id;
  entry.kind = kind;
  entry.request = request;
  entry.request_hash = sha256_hex(kind + "\n" + s.config.model + "\n" + request.dump());
  {
    std::lock_guard lock(log_mutex_);
    entry.sequence = tag_sequence_[entry.tag]++;
  }
  auto record = [&](RequestLogEntry e) {
    std::lock_guard lock(log_mutex_);
    if (e.cached) ++cache_hits_;
    log_.push_back(std::move(e));
  };

  if (auto hit = cache_get(s, entry.request_hash)) {
    entry.cached = true;
    entry.response = *hit;
    record(entry);
    return *hit;
  }
  if (options_.offline) {
    entry.error = "offline and no cached response";
    record(entry);
    throw GatewayError("endpoint " + s.config.id + ": offline and no cached response", false);
  }

  {
    std::unique_lock lock(s.mutex);
    s.cv.wait(lock, [&] { return s.in_flight < s.config.max_in_flight; });
    s.peak = std::max(s.peak, ++s.in_flight);
  }
  struct Release {
    Slot& s;
    ~Release() {
      {
        std::lock_guard lock(s.mutex);
        --s.in_flight;
      }
      s.cv.notify_one();
    }
  } release{s};

  for (int attempt = 1;; ++attempt) {
    entry.attempts = attempt;
    try {
      auto response = invoke(*s.backend);
      entry.response = response;
      cache_put(s, entry.request_hash, request, response);
      record(entry);
      return response;
    } catch (const GatewayError& e) {
      if (!e.retryable() || attempt >= s.config.max_attempts) {
        entry.error = e.what();
        record(entry);
        if (e.retryable()) {
          throw GatewayError(std::string(e.what()) + " (after " + std::to_string(attempt) + " attempts)", true);
        }
        throw;
      }
      const auto wait = static_cast<long long>(s.config.backoff_ms) << std::min(attempt - 1, 10);
      std::this_thread::sleep_for(std::chrono::milliseconds(wait));
    }
  }
}

GenerationResult Gateway::generate(std::string_view endpoint_id, const GenerationRequest& request,
                                   std::string_view tag) {
  request.validate();
  auto reply = call(endpoint_id, "generate", to_json(request), tag,
                    [&](Backend& b) -> nlohmann::json { return to_json(b.generate(request)); });
  return generation_result_from_json(reply);
}

std::vector<EmbeddingSequence> Gateway::embed(std::string_view endpoint_id, const std::vector<std::string>& texts,
                                              std::string_view tag) {
  if (texts.empty()) throw PreconditionError("embed needs at least one text");
  nlohmann::ordered_json request{{"texts", texts}};
  auto reply = call(endpoint_id, "embed", request, tag, [&](Backend& b) -> nlohmann::json {
    auto seqs = b.embed(texts);
    std::optional<std::size_t> dim;
    for (const auto& seq : seqs) {
      for (const auto& v : seq) {
        if (!dim) dim = v.size();
        if (v.size() != *dim) throw GatewayError("embedding dimensions differ within a batch", false);
      }
    }
    if (seqs.size() != texts.size()) throw GatewayError("embedding count does not match input count", false);
    return nlohmann::json{{"embeddings", seqs}};
  });
  return reply.at("embeddings").get<std::vector<EmbeddingSequence>>();
}

std::vector<RequestLogEntry> Gateway::log() const {
  std::vector<RequestLogEntry> out;
  {
    std::lock_guard lock(log_mutex_);
    out = log_;
  }
  std::sort(out.begin(), out.end(), [](const RequestLogEntry& a, const RequestLogEntry& b) {
    return std::tie(a.tag, a.sequence) < std::tie(b.tag, b.sequence);
  });
  return out;
}

void Gateway::write_log(const std::filesystem::path& path) const {
  std::string out;
  for (const auto& e : log()) {
    nlohmann::ordered_json j;
    j["run_id"] = options_.run_id;
    j["tag"] = e.tag;
    j["sequence"] = e.sequence;
    j["endpoint"] = e.endpoint;
    j["kind"] = e.kind;
    j["request_hash"] = e.request_hash;
    j["request"] = e.request;
    j["response"] = e.response;
    j["attempts"] = e.attempts;
    j["cached"] = e.cached;
    j["error"] = e.error.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(e.error);
    out += j.dump();
    out += '\n';
  }
  write_text_file(path, out);
}

}  // namespace bailbench
