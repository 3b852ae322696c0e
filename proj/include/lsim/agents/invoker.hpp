#pragma once

#include <functional>
#include <optional>
#include <string>

#include "json.hpp"
#include "lsim/agents/backend.hpp"
#include "lsim/agents/templates.hpp"
#include "lsim/memory/long_term.hpp"
#include "lsim/memory/short_term.hpp"

namespace lsim::agents {

/// Receives every event an agent produces. The engine stamps sequence numbers
/// and timestamps; tests may just collect.
class EventSink {
  public:
    virtual ~EventSink() = default;
    virtual void emit(std::string kind, nlohmann::json payload) = 0;
};

class CollectingSink : public EventSink {
  public:
    void emit(std::string kind, nlohmann::json payload) override {
        events.emplace_back(std::move(kind), std::move(payload));
    }
    std::size_t count(std::string_view kind) const;
    std::vector<std::pair<std::string, nlohmann::json>> events;
};

inline constexpr int kDefaultMaxRepairs = 2;

/// Everything an agent needs to act: identity, backend, its own memories, and
/// the sink its events go to. One context per agent; never shared across tasks.
struct AgentContext {
    std::string agent_id;    // learner id or "teacher"
    std::string agent_role;  // learner | teacher
    std::string display_name;
    std::string profile_prompt;
    Backend* backend = nullptr;
    const TemplateLibrary* templates = nullptr;
    EventSink* sink = nullptr;
    memory::ShortTermMemory* short_term = nullptr;
    memory::LongTermStore* long_term = nullptr;  // null for the teacher
    SimTime now;
    int max_repairs = kDefaultMaxRepairs;
};

/// Send system = profile, history = short-term turns, user = task. Emits a
/// backend_call event and appends the exchange to short-term memory.
Completion invoke(AgentContext& ctx, const std::string& template_id, const std::string& task_prompt,
                  const nlohmann::json& context);

/// Short-term update for one backend_call payload; shared by live runs and replay.
void record_exchange(memory::ShortTermMemory& stm, const nlohmann::json& call_payload, const SimTime& at);

/// Store in long-term memory and emit the matching memory_store event.
memory::MemoryEntry remember(AgentContext& ctx, memory::MemoryEntry entry);

void warn(AgentContext& ctx, std::string code, std::string message, nlohmann::json details = nlohmann::json::object());

template <class T>
struct Parsed {
    std::optional<T> value;
    int attempts = 0;
    std::string raw;    // last reply
    std::string error;  // last parse error
};

/// Invoke and parse; on a parse failure re-invoke with the repair instruction
/// appended, up to ctx.max_repairs extra rounds.
template <class T>
Parsed<T> ask_structured(AgentContext& ctx, const std::string& template_id, const std::string& task_prompt,
                         const nlohmann::json& context, const std::function<T(const std::string&)>& parse);

}  // namespace lsim::agents

#include "lsim/agents/invoker_impl.hpp"
