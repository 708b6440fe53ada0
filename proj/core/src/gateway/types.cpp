#include "bailbench/gateway/types.hpp"

#include "bailbench/common/errors.hpp"

namespace bailbench {

void GenerationRequest::validate() const {
  if (max_new_tokens < 1) throw PreconditionError("max_new_tokens must be at least 1");
  if (!(temperature >= 0.0)) throw PreconditionError("temperature must be non-negative");
}

namespace {

int int_in(const nlohmann::json& j, const char* key, int fallback, int lo, int hi, const std::string& id) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw ConfigError("endpoint " + id + ": " + key + " must be an integer");
  auto v = j[key].get<long long>();
  if (v < lo || v > hi) {
    throw ConfigError("endpoint " + id + ": " + key + " must be in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

std::string str(const nlohmann::json& j, const char* key, const std::string& id) {
  if (!j.contains(key)) return {};
  if (!j[key].is_string()) throw ConfigError("endpoint " + id + ": " + key + " must be a string");
  return j[key].get<std::string>();
}

}  // namespace

EndpointConfig endpoint_from_json(const std::string& id, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("endpoint " + id + " must be an object");
  EndpointConfig e;
  e.id = id;
  const auto kind = j.value("kind", std::string("mock"));
  if (kind == "mock") {
    e.kind = BackendKind::Mock;
  } else if (kind == "http") {
    e.kind = BackendKind::Http;
  } else {
    throw ConfigError("endpoint " + id + ": unknown kind '" + kind + "' (expected mock or http)");
  }
  e.model = str(j, "model", id);
  e.base_url = str(j, "base_url", id);
  e.base_url_env = str(j, "base_url_env", id);
  e.api_key_env = str(j, "api_key_env", id);
  e.max_in_flight = int_in(j, "max_in_flight", e.max_in_flight, 1, 1024, id);
  e.max_attempts = int_in(j, "max_attempts", e.max_attempts, 1, 100, id);
  e.timeout_ms = int_in(j, "timeout_ms", e.timeout_ms, 1, 3600000, id);
  e.backoff_ms = int_in(j, "backoff_ms", e.backoff_ms, 0, 600000, id);
  e.embedding_dim = int_in(j, "embedding_dim", e.embedding_dim, 1, 4096, id);
  e.latency_ms = int_in(j, "latency_ms", e.latency_ms, 0, 60000, id);
  if (j.contains("flip_percent")) {
    if (!j["flip_percent"].is_number()) throw ConfigError("endpoint " + id + ": flip_percent must be a number");
    e.flip_percent = j["flip_percent"].get<double>();
    if (e.flip_percent < 0 || e.flip_percent > 100) {
      throw ConfigError("endpoint " + id + ": flip_percent must be in [0, 100]");
    }
  }
  return e;
}

nlohmann::ordered_json endpoint_to_json(const EndpointConfig& e) {
  nlohmann::ordered_json j;
  j["kind"] = e.kind == BackendKind::Mock ? "mock" : "http";
  j["model"] = e.model;
  j["base_url"] = e.base_url;
  j["base_url_env"] = e.base_url_env;
  j["api_key_env"] = e.api_key_env;
  j["max_in_flight"] = e.max_in_flight;
  j["max_attempts"] = e.max_attempts;
  j["timeout_ms"] = e.timeout_ms;
  j["backoff_ms"] = e.backoff_ms;
  if (e.kind == BackendKind::Mock) {
    j["flip_percent"] = e.flip_percent;
    j["embedding_dim"] = e.embedding_dim;
    j["latency_ms"] = e.latency_ms;
  }
  return j;
}

nlohmann::ordered_json to_json(const GenerationRequest& r) {
  nlohmann::ordered_json j;
  j["prompt"] = r.prompt;
  j["max_new_tokens"] = r.max_new_tokens;
  j["temperature"] = r.temperature;
  j["want_logprobs"] = r.want_logprobs;
  j["candidate_tokens"] = r.candidate_tokens;
  return j;
}

nlohmann::ordered_json to_json(const GenerationResult& r) {
  nlohmann::ordered_json j;
  j["text"] = r.text;
  if (r.decision_logprobs) {
    j["decision_logprobs"] = nlohmann::ordered_json::object();
    for (const auto& [tok, lp] : *r.decision_logprobs) j["decision_logprobs"][tok] = lp;
  } else {
    j["decision_logprobs"] = nullptr;
  }
  j["usage"] = {{"prompt_tokens", r.usage.prompt_tokens}, {"completion_tokens", r.usage.completion_tokens}};
  return j;
}

GenerationResult generation_result_from_json(const nlohmann::json& j) {
  GenerationResult r;
  j.at("text").get_to(r.text);
  if (auto it = j.find("decision_logprobs"); it != j.end() && !it->is_null()) {
    r.decision_logprobs = it->get<std::map<std::string, double>>();
  }
  if (auto it = j.find("usage"); it != j.end() && it->is_object()) {
    r.usage.prompt_tokens = it->value("prompt_tokens", 0LL);
    r.usage.completion_tokens = it->value("completion_tokens", 0LL);
  }
  return r;
}

nlohmann::ordered_json to_json(const JudgeVerdict& v) {
  nlohmann::ordered_json j;
  j["factual_accuracy"] = v.factual_accuracy;
  j["completeness_coverage"] = v.completeness_coverage;
  j["clarity_coherence"] = v.clarity_coherence;
  j["overall"] = v.overall;
  j["rationale"] = v.rationale;
  return j;
}

JudgeVerdict judge_verdict_from_json(const nlohmann::json& j) {
  JudgeVerdict v;
  j.at("factual_accuracy").get_to(v.factual_accuracy);
  j.at("completeness_coverage").get_to(v.completeness_coverage);
  j.at("clarity_coherence").get_to(v.clarity_coherence);
  j.at("overall").get_to(v.overall);
  v.rationale = j.value("rationale", std::string{});
  return v;
}

}  // namespace bailbench
