#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lsim/engine/config.hpp"

namespace lsim::engine {

struct RunOptions {
    /// Stop right after the checkpoint of this month (0 = after the initial exam),
    /// as if the process had been interrupted there.
    std::optional<int> stop_after_month;
    bool build_report = true;
};

struct RunResult {
    std::filesystem::path run_dir;
    bool completed = false;
    int last_checkpoint = -1;
    std::string notice;
};

/// Fresh run for one seed in `<output_dir>/seed-<seed>`; an existing run there is replaced.
RunResult run(const RunConfig& config, std::uint64_t seed, const RunOptions& options = {});
/// One run per configured seed.
std::vector<RunResult> run_all(const RunConfig& config, const RunOptions& options = {});

/// Continue from the latest checkpoint. Refuses (lsim::Error) when the checkpoint
/// does not match the log prefix or the run's config. A completed run is left as is.
RunResult resume(const std::filesystem::path& run_dir, const RunOptions& options = {});

}  // namespace lsim::engine
