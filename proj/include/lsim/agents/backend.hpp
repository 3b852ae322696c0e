#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

namespace lsim::corpus {
class QuestionBank;
}

namespace lsim::agents {

struct ChatMessage {
    std::string role;  // system | user | assistant
    std::string content;
};

struct ChatRequest {
    std::string agent_role;  // teacher | learner
    std::string template_id;
    std::vector<ChatMessage> messages;
    /// Structured description of the task (learner, question ids, round...). Never
    /// sent over the wire; rule-driven backends use it instead of parsing prompts.
    nlohmann::json context = nlohmann::json::object();
};

struct Completion {
    std::string text;
    int attempts = 1;
};

/// A generative backend. Implementations must be safe to call from several
/// learner tasks at once.
class Backend {
  public:
    virtual ~Backend() = default;
    /// Throws BackendError once retries are exhausted or the backend reports an error.
    virtual Completion complete(const ChatRequest& request) = 0;
    /// Settings recorded in the event log (model, decoding parameters, policy).
    virtual nlohmann::json describe() const = 0;
};

/// Build a backend from its config object: {"type": "scripted", "scripted": {...}}
/// or {"type": "http", "http": {...}}. The scripted backend needs the bank.
std::unique_ptr<Backend> make_backend(const nlohmann::json& config, std::shared_ptr<const corpus::QuestionBank> bank,
                                      std::uint64_t seed);

}  // namespace lsim::agents
