#pragma once

#include <cstddef>
#include <deque>
#include <string>

#include "json.hpp"
#include "lsim/sim_time.hpp"

namespace lsim::memory {

inline constexpr std::size_t kDefaultShortTermCapacity = 3;

struct Turn {
    std::string speaker;
    std::string text;
    SimTime timestamp;

    bool operator==(const Turn&) const = default;
};

/// Bounded FIFO of the most recent dialogue turns.
class ShortTermMemory {
  public:
    explicit ShortTermMemory(std::size_t capacity = kDefaultShortTermCapacity);

    /// Append; evicts the oldest turn once the capacity is exceeded.
    void append(Turn turn);

    const std::deque<Turn>& turns() const { return turns_; }
    std::size_t capacity() const { return capacity_; }
    std::size_t size() const { return turns_.size(); }

    nlohmann::json to_json() const;
    static ShortTermMemory from_json(const nlohmann::json& j);

    bool operator==(const ShortTermMemory&) const = default;

  private:
    std::size_t capacity_;
    std::deque<Turn> turns_;
};

}  // namespace lsim::memory
