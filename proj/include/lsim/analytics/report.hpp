#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "lsim/analytics/metrics.hpp"

namespace lsim::analytics {

inline constexpr const char* kSeriesMetrics[] = {"total_score",  "review_acc",    "trap_acc",         "ki_acc",
                                                 "self_concept", "reasoning_len", "connector_density"};

struct Series {
    std::string learner;
    std::string metric;
    std::vector<std::pair<int, double>> points;  // sorted by month
};

/// Monthly series of every metric for every learner, from the event records.
std::vector<Series> longitudinal_series(const std::vector<nlohmann::json>& events);

/// Report files keyed by path relative to the report directory. Pure in the events.
std::map<std::string, std::string> render_report(const std::vector<nlohmann::json>& events);

/// Read `<run_dir>/events.jsonl` and write the report under `<run_dir>/report/`.
/// Throws lsim::Error when the log is missing or corrupt.
void build_report(const std::filesystem::path& run_dir);

/// Shortest round-trip decimal text of a double, as written in every CSV.
std::string number(double v);

}  // namespace lsim::analytics
