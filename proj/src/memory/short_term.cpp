#include "lsim/memory/short_term.hpp"

#include "lsim/error.hpp"

namespace lsim::memory {

ShortTermMemory::ShortTermMemory(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw Error("short-term memory capacity must be at least 1");
}

void ShortTermMemory::append(Turn turn) {
    turns_.push_back(std::move(turn));
    while (turns_.size() > capacity_) turns_.pop_front();
}

nlohmann::json ShortTermMemory::to_json() const {
    nlohmann::json turns = nlohmann::json::array();
    for (const auto& t : turns_) {
        turns.push_back({{"speaker", t.speaker}, {"text", t.text}, {"timestamp", lsim::to_json(t.timestamp)}});
    }
    return {{"capacity", capacity_}, {"turns", std::move(turns)}};
}

ShortTermMemory ShortTermMemory::from_json(const nlohmann::json& j) {
    ShortTermMemory m(j.at("capacity").get<std::size_t>());
    for (const auto& t : j.at("turns")) {
        m.append({t.at("speaker").get<std::string>(), t.at("text").get<std::string>(),
                  sim_time_from_json(t.at("timestamp"))});
    }
    return m;
}

}  // namespace lsim::memory
