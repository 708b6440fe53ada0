#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <algorithm>
#include <cstdlib>

#include "bailbench/common/errors.hpp"
#include "bailbench/gateway/backend.hpp"

namespace bailbench {

namespace {

std::string env_or(const std::string& name, const std::string& fallback) {
  if (name.empty()) return fallback;
  const char* v = std::getenv(name.c_str());
  return (v && *v) ? std::string(v) : fallback;
}

// "https://host:8443/prefix" -> {"https://host:8443", "/prefix"}
std::pair<std::string, std::string> split_url(const std::string& url) {
  auto scheme = url.find("://");
  auto path = url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path), prefix};
}

GatewayError malformed(const std::string& what) { return GatewayError("malformed backend reply: " + what, false); }

double lookup_logprob(const nlohmann::json& table, const std::string& token) {
  double best = kLogprobFloor;
  bool found = false;
  for (const auto& [k, v] : table.items()) {
    if (!v.is_number()) continue;
    std::string_view key = k;
    while (!key.empty() && (key.front() == ' ' || key.front() == '\t')) key.remove_prefix(1);
    if (key == token) {
      best = found ? std::max(best, v.get<double>()) : v.get<double>();
      found = true;
    }
  }
  return best;
}

}  // namespace

nlohmann::json completion_request_body(const EndpointConfig& config, const GenerationRequest& request) {
  nlohmann::json body;
  body["model"] = config.model;
  body["prompt"] = request.prompt;
  body["max_tokens"] = request.max_new_tokens;
  body["temperature"] = request.temperature;
  if (request.want_logprobs) body["logprobs"] = 20;
  if (!request.candidate_tokens.empty()) body["candidate_tokens"] = request.candidate_tokens;
  return body;
}

GenerationResult parse_completion_response(const nlohmann::json& reply, const GenerationRequest& request) {
  if (!reply.is_object() || !reply.contains("choices") || !reply["choices"].is_array() || reply["choices"].empty()) {
    throw malformed("no choices");
  }
  const auto& choice = reply["choices"][0];
  if (!choice.contains("text") || !choice["text"].is_string()) throw malformed("choice without text");
  GenerationResult out;
  out.text = choice["text"].get<std::string>();

  if (request.want_logprobs) {
    const auto lp = choice.find("logprobs");
    if (lp == choice.end() || !lp->is_object()) throw malformed("logprobs requested but absent");
    const nlohmann::json* table = nullptr;
    if (auto c = lp->find("candidate_logprobs"); c != lp->end() && c->is_object()) {
      table = &*c;
    } else if (auto t = lp->find("top_logprobs"); t != lp->end() && t->is_array() && !t->empty() &&
                                                  (*t)[0].is_object()) {
      table = &(*t)[0];
    }
    if (!table) throw malformed("logprobs without a first-position table");
    std::map<std::string, double> decision;
    if (request.candidate_tokens.empty()) {
      for (const auto& [k, v] : table->items())
        if (v.is_number()) decision[k] = v.get<double>();
    } else {
      for (const auto& c : request.candidate_tokens) decision[c] = lookup_logprob(*table, c);
    }
    out.decision_logprobs = std::move(decision);
  }
  if (auto u = reply.find("usage"); u != reply.end() && u->is_object()) {
    out.usage.prompt_tokens = u->value("prompt_tokens", 0LL);
    out.usage.completion_tokens = u->value("completion_tokens", 0LL);
  }
  return out;
}

std::vector<EmbeddingSequence> parse_embedding_response(const nlohmann::json& reply, std::size_t expected) {
  if (!reply.is_object() || !reply.contains("data") || !reply["data"].is_array()) throw malformed("no data array");
  const auto& data = reply["data"];
  if (data.size() != expected) {
    throw malformed("expected " + std::to_string(expected) + " embeddings, got " + std::to_string(data.size()));
  }
  std::vector<EmbeddingSequence> out(expected);
  std::vector<bool> seen(expected, false);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& item = data[i];
    const std::size_t index = item.value("index", i);
    if (index >= expected || seen[index]) throw malformed("bad embedding index");
    seen[index] = true;
    if (!item.contains("embeddings") || !item["embeddings"].is_array()) throw malformed("item without embeddings");
    try {
      out[index] = item["embeddings"].get<EmbeddingSequence>();
    } catch (const nlohmann::json::exception&) {
      throw malformed("embeddings are not arrays of numbers");
    }
  }
  return out;
}

HttpBackend::HttpBackend(EndpointConfig config) : config_(std::move(config)) {
  base_url_ = env_or(config_.base_url_env, config_.base_url);
  api_key_ = env_or(config_.api_key_env, "");
  if (base_url_.empty()) {
    throw ConfigError("endpoint " + config_.id + " has no base_url" +
                      (config_.base_url_env.empty() ? std::string() : " and $" + config_.base_url_env + " is unset"));
  }
}

nlohmann::json HttpBackend::post(const std::string& path, const nlohmann::json& body) {
  auto [origin, prefix] = split_url(base_url_);
  httplib::Client client(origin);
  const auto ms = std::chrono::milliseconds(config_.timeout_ms);
  client.set_connection_timeout(ms);
  client.set_read_timeout(ms);
  client.set_write_timeout(ms);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  auto res = client.Post(prefix + path, headers, body.dump(), "application/json");
  if (!res) {
    throw GatewayError("transport error talking to " + config_.id + ": " + httplib::to_string(res.error()), true);
  }
  if (res->status == 429 || res->status >= 500) {
    throw GatewayError("endpoint " + config_.id + " returned HTTP " + std::to_string(res->status), true);
  }
  if (res->status != 200) {
    throw GatewayError("endpoint " + config_.id + " returned HTTP " + std::to_string(res->status) + ": " +
                           res->body.substr(0, 200),
                       false);
  }
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception&) {
    throw malformed("body is not JSON");
  }
}

GenerationResult HttpBackend::generate(const GenerationRequest& request) {
  return parse_completion_response(post("/v1/completions", completion_request_body(config_, request)), request);
}

std::vector<EmbeddingSequence> HttpBackend::embed(const std::vector<std::string>& texts) {
  nlohmann::json body{{"model", config_.model}, {"input", texts}};
  return parse_embedding_response(post("/v1/token_embeddings", body), texts.size());
}

std::unique_ptr<Backend> make_backend(const EndpointConfig& config) {
  if (config.kind == BackendKind::Http) return std::make_unique<HttpBackend>(config);
  return std::make_unique<MockBackend>(config);
}

}  // namespace bailbench
