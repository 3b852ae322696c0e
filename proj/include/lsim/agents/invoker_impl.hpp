#pragma once

#include "lsim/error.hpp"

namespace lsim::agents {

template <class T>
Parsed<T> ask_structured(AgentContext& ctx, const std::string& template_id, const std::string& task_prompt,
                         const nlohmann::json& context, const std::function<T(const std::string&)>& parse) {
    Parsed<T> out;
    std::string prompt = task_prompt;
    for (int round = 0; round <= ctx.max_repairs; ++round) {
        nlohmann::json c = context;
        if (round > 0) c["repair_round"] = round;
        auto reply = invoke(ctx, template_id, prompt, c);
        ++out.attempts;
        out.raw = reply.text;
        try {
            out.value = parse(reply.text);
            return out;
        } catch (const SchemaError& e) {
            out.error = e.what();
        }
        prompt = task_prompt + "\n\n" + ctx.templates->render("repair", {{0, out.error}});
    }
    return out;
}

}  // namespace lsim::agents
