#include "lsim/engine/run_state.hpp"

#include "lsim/agents/invoker.hpp"
#include "lsim/error.hpp"

namespace lsim::engine {

RunState::RunState(const std::vector<std::string>& learners, std::size_t k) {
    short_term.emplace("teacher", memory::ShortTermMemory(k));
    for (const auto& l : learners) {
        short_term.emplace(l, memory::ShortTermMemory(k));
        long_term.emplace(l, memory::LongTermStore(l));
    }
}

void RunState::apply(const Event& e) {
    if (e.kind == "backend_call") {
        const auto agent = e.payload.at("agent").get<std::string>();
        auto it = short_term.find(agent);
        if (it == short_term.end()) throw Error("event " + std::to_string(e.seq) + " names unknown agent " + agent);
        agents::record_exchange(it->second, e.payload, e.timestamp);
    } else if (e.kind == "memory_store") {
        const auto learner = e.payload.at("learner").get<std::string>();
        auto it = long_term.find(learner);
        if (it == long_term.end()) throw Error("event " + std::to_string(e.seq) + " names unknown learner " + learner);
        it->second.store(memory::entry_from_json(e.payload.at("entry")));
    } else if (e.kind == "checkpoint") {
        completed_month = e.payload.at("month").get<int>();
    } else if (e.kind == "run_completed") {
        finished = true;
    }
}

}  // namespace lsim::engine
