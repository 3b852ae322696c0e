#pragma once

#include <optional>
#include <string>

#include "lsim/agents/backend.hpp"

namespace lsim::agents {

/// OpenAI-compatible chat-completion endpoint settings. The token is read from
/// the environment variable named by api_key_env; it is never stored.
struct HttpSettings {
    std::string endpoint = "http://127.0.0.1:8000/v1/chat/completions";
    std::string model;
    std::optional<std::string> teacher_model;  // defaults to `model`
    std::string api_key_env = "OPENAI_API_KEY";
    int timeout_ms = 60000;
    int max_retries = 3;
    int backoff_ms = 500;  // first retry delay; doubles per retry
    double temperature = 0.7;
    double top_p = 1.0;
    int max_tokens = 2048;

    nlohmann::json to_json() const;
    static HttpSettings from_json(const nlohmann::json& j);
};

/// Retries transport failures, HTTP 429 and 5xx with exponential backoff. Every
/// call uses its own connection, so concurrent learner tasks never share a client.
class HttpBackend : public Backend {
  public:
    explicit HttpBackend(HttpSettings settings);

    Completion complete(const ChatRequest& request) override;
    nlohmann::json describe() const override;

  private:
    HttpSettings s_;
    std::string base_;  // scheme://host[:port]
    std::string path_;
};

}  // namespace lsim::agents
