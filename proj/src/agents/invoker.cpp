#include "lsim/agents/invoker.hpp"

namespace lsim::agents {

using nlohmann::json;

std::size_t CollectingSink::count(std::string_view kind) const {
    std::size_t n = 0;
    for (const auto& e : events) n += e.first == kind ? 1 : 0;
    return n;
}

Completion invoke(AgentContext& ctx, const std::string& template_id, const std::string& task_prompt,
                  const json& context) {
    ChatRequest req;
    req.agent_role = ctx.agent_role;
    req.template_id = template_id;
    req.context = context;
    req.messages.push_back({"system", ctx.profile_prompt});
    if (ctx.short_term) {
        for (const auto& t : ctx.short_term->turns()) {
            req.messages.push_back({t.speaker == ctx.agent_id ? "assistant" : "user", t.text});
        }
    }
    req.messages.push_back({"user", task_prompt});

    json payload = {{"agent", ctx.agent_id},
                    {"role", ctx.agent_role},
                    {"template_id", template_id},
                    {"history_turns", req.messages.size() - 2},
                    {"prompt", task_prompt}};
    Completion reply;
    try {
        reply = ctx.backend->complete(req);
    } catch (const BackendError& e) {
        payload["error"] = e.what();
        payload["attempts"] = e.attempts();
        ctx.sink->emit("backend_call", std::move(payload));
        throw;
    }
    payload["response"] = reply.text;
    payload["attempts"] = reply.attempts;
    if (ctx.short_term) record_exchange(*ctx.short_term, payload, ctx.now);
    ctx.sink->emit("backend_call", std::move(payload));
    return reply;
}

void record_exchange(memory::ShortTermMemory& stm, const json& call, const SimTime& at) {
    if (!call.contains("response")) return;
    const auto agent = call.at("agent").get<std::string>();
    stm.append({agent == "teacher" ? "learner" : "teacher", call.at("prompt").get<std::string>(), at});
    stm.append({agent, call.at("response").get<std::string>(), at});
}

memory::MemoryEntry remember(AgentContext& ctx, memory::MemoryEntry entry) {
    if (entry.owner.empty()) entry.owner = ctx.agent_id;
    entry.created_at = ctx.now;
    entry.entry_id = ctx.long_term->store(entry);
    ctx.sink->emit("memory_store", {{"learner", ctx.agent_id}, {"entry", memory::to_json(entry)}});
    return entry;
}

void warn(AgentContext& ctx, std::string code, std::string message, json details) {
    ctx.sink->emit("warning", {{"agent", ctx.agent_id},
                               {"code", std::move(code)},
                               {"message", std::move(message)},
                               {"details", std::move(details)}});
}

}  // namespace lsim::agents
