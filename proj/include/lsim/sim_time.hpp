#pragma once

#include <string>

#include "json.hpp"

namespace lsim {

/// Position on the simulation clock. Month 0 is the pre-year initial exam.
struct SimTime {
    int month = 0;
    int week = 0;
    std::string phase;
    int step = 0;

    bool operator==(const SimTime&) const = default;
};

inline nlohmann::json to_json(const SimTime& t) {
    return {{"month", t.month}, {"week", t.week}, {"phase", t.phase}, {"step", t.step}};
}

inline SimTime sim_time_from_json(const nlohmann::json& j) {
    return {j.at("month").get<int>(), j.at("week").get<int>(), j.at("phase").get<std::string>(),
            j.value("step", 0)};
}

}  // namespace lsim
