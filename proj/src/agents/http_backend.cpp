#include "lsim/agents/http_backend.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "lsim/error.hpp"

namespace lsim::agents {

using nlohmann::json;

json HttpSettings::to_json() const {
    json j = {{"endpoint", endpoint},       {"model", model},           {"api_key_env", api_key_env},
              {"timeout_ms", timeout_ms},   {"max_retries", max_retries}, {"backoff_ms", backoff_ms},
              {"temperature", temperature}, {"top_p", top_p},           {"max_tokens", max_tokens}};
    if (teacher_model) j["teacher_model"] = *teacher_model;
    return j;
}

HttpSettings HttpSettings::from_json(const json& j) {
    HttpSettings s;
    s.endpoint = j.value("endpoint", s.endpoint);
    s.model = j.value("model", s.model);
    if (j.contains("teacher_model")) s.teacher_model = j["teacher_model"].get<std::string>();
    s.api_key_env = j.value("api_key_env", s.api_key_env);
    s.timeout_ms = j.value("timeout_ms", s.timeout_ms);
    s.max_retries = j.value("max_retries", s.max_retries);
    s.backoff_ms = j.value("backoff_ms", s.backoff_ms);
    s.temperature = j.value("temperature", s.temperature);
    s.top_p = j.value("top_p", s.top_p);
    s.max_tokens = j.value("max_tokens", s.max_tokens);
    if (j.contains("api_key")) throw Error("put the API token in the environment variable named by api_key_env");
    if (s.max_retries < 0) throw Error("max_retries must be >= 0");
    return s;
}

HttpBackend::HttpBackend(HttpSettings settings) : s_(std::move(settings)) {
    auto scheme = s_.endpoint.find("://");
    if (scheme == std::string::npos) throw Error("endpoint must start with http:// or https://: " + s_.endpoint);
    auto slash = s_.endpoint.find('/', scheme + 3);
    base_ = s_.endpoint.substr(0, slash);
    path_ = slash == std::string::npos ? "/v1/chat/completions" : s_.endpoint.substr(slash);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (s_.endpoint.rfind("https", 0) == 0) throw Error("this build has no TLS support; use an http:// endpoint");
#endif
}

json HttpBackend::describe() const { return {{"type", "http"}, {"settings", s_.to_json()}}; }

Completion HttpBackend::complete(const ChatRequest& req) {
    json body = {{"model", req.agent_role == "teacher" && s_.teacher_model ? *s_.teacher_model : s_.model},
                 {"temperature", s_.temperature},
                 {"top_p", s_.top_p},
                 {"max_tokens", s_.max_tokens},
                 {"messages", json::array()}};
    for (const auto& m : req.messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
    const auto payload = body.dump();

    httplib::Headers headers;
    if (const char* key = std::getenv(s_.api_key_env.c_str()); key && *key) {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    std::string last_error;
    int delay = s_.backoff_ms;
    for (int attempt = 1; attempt <= s_.max_retries + 1; ++attempt) {
        if (attempt > 1) {
            std::this_thread::sleep_for(std::chrono::milliseconds(delay));
            delay *= 2;
        }
        httplib::Client cli(base_);
        auto t = std::chrono::milliseconds(s_.timeout_ms);
        cli.set_connection_timeout(t);
        cli.set_read_timeout(t);
        cli.set_write_timeout(t);
        auto res = cli.Post(path_, headers, payload, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 429 || res->status >= 500) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw BackendError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 500), attempt);
        }
        try {
            auto j = json::parse(res->body);
            Completion c;
            c.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
            c.attempts = attempt;
            return c;
        } catch (const json::exception& e) {
            throw BackendError(std::string("malformed completion: ") + e.what(), attempt);
        }
    }
    throw BackendError(last_error + " after " + std::to_string(s_.max_retries + 1) + " attempts", s_.max_retries + 1);
}

}  // namespace lsim::agents
