#pragma once

#include <map>
#include <string>
#include <vector>

#include "lsim/engine/events.hpp"
#include "lsim/memory/long_term.hpp"
#include "lsim/memory/short_term.hpp"

namespace lsim::engine {

/// Everything that carries across month boundaries, rebuilt by folding events.
/// Live runs mutate the same structures through the agents, so a fold of the
/// log reproduces the live state exactly.
struct RunState {
    std::map<std::string, memory::ShortTermMemory> short_term;  // learners and "teacher"
    std::map<std::string, memory::LongTermStore> long_term;     // learners
    int completed_month = -1;  // last checkpointed month; 0 = initial exam done
    bool finished = false;

    RunState() = default;
    RunState(const std::vector<std::string>& learners, std::size_t k);

    /// Apply one event. Throws lsim::Error for an event naming an unknown agent.
    void apply(const Event& e);

    bool operator==(const RunState&) const = default;
};

}  // namespace lsim::engine
