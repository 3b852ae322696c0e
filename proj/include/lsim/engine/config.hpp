#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace lsim::engine {

struct RunConfig {
    std::filesystem::path corpus_path;
    nlohmann::json backend = {{"type", "scripted"}};
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> seeds;  // optional: one run directory per seed
    int months = 12;
    std::vector<std::string> learners = {"deep", "surface", "lazy", "general"};
    int k = 3;    // short-term capacity
    int k_d = 4;  // debate round cap
    std::optional<std::size_t> debate_cap;
    std::filesystem::path output_dir = "runs";
    std::optional<std::filesystem::path> templates_dir;
    std::optional<nlohmann::json> connector_lexicon;
    /// Run learner tasks of a phase on separate threads.
    bool parallel = true;

    /// Throws lsim::Error naming the offending field.
    void validate() const;

    nlohmann::json to_json() const;
    /// Relative paths are resolved against `base_dir` (the config file's directory).
    static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
    static RunConfig load(const std::filesystem::path& file);

    /// Fields that define the run's identity; hashed into every checkpoint and
    /// logged at start. Paths are excluded so a moved run directory still resumes.
    nlohmann::json identity() const;

    std::filesystem::path run_dir_for(std::uint64_t s) const;
    std::vector<std::uint64_t> all_seeds() const;
};

}  // namespace lsim::engine
