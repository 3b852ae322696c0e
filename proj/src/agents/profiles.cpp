#include "lsim/agents/profiles.hpp"

#include <array>

#include "lsim/agents/templates.hpp"
#include "lsim/util/files.hpp"

namespace lsim::agents {

std::string_view to_string(LearnerId id) {
    switch (id) {
        case LearnerId::deep: return "deep";
        case LearnerId::surface: return "surface";
        case LearnerId::lazy: return "lazy";
        case LearnerId::general: return "general";
    }
    return "?";
}

std::string_view to_string(Motivation m) {
    switch (m) {
        case Motivation::intrinsic: return "intrinsic";
        case Motivation::extrinsic: return "extrinsic";
        case Motivation::minimal_effort: return "minimal_effort";
        case Motivation::none: return "none";
    }
    return "?";
}

std::string_view to_string(DevStrategy s) {
    switch (s) {
        case DevStrategy::long_term: return "long_term";
        case DevStrategy::test_oriented: return "test_oriented";
        case DevStrategy::passive: return "passive";
        case DevStrategy::none: return "none";
    }
    return "?";
}

std::optional<LearnerId> parse_learner_id(std::string_view s) {
    for (auto id : all_learners()) {
        if (to_string(id) == s) return id;
    }
    return std::nullopt;
}

const std::vector<LearnerId>& all_learners() {
    static const std::vector<LearnerId> ids{LearnerId::deep, LearnerId::surface, LearnerId::lazy, LearnerId::general};
    return ids;
}

namespace {

LearnerProfile make(LearnerId id, std::string name, Motivation m, std::optional<int> sc, DevStrategy s) {
    LearnerProfile p{id, std::move(name), m, sc, s, {}};
    p.profile_prompt = files::read_file(asset_dir() / "profiles" / (std::string(to_string(id)) + ".txt"));
    return p;
}

}  // namespace

const LearnerProfile& builtin_profile(LearnerId id) {
    static const std::array<LearnerProfile, 4> profiles{
        make(LearnerId::deep, "Alice", Motivation::intrinsic, 80, DevStrategy::long_term),
        make(LearnerId::surface, "Bob", Motivation::extrinsic, 60, DevStrategy::test_oriented),
        make(LearnerId::lazy, "Charlie", Motivation::minimal_effort, 40, DevStrategy::passive),
        make(LearnerId::general, "Dana", Motivation::none, std::nullopt, DevStrategy::none),
    };
    return profiles[static_cast<std::size_t>(id)];
}

const std::string& teacher_profile_prompt() {
    static const std::string text = files::read_file(asset_dir() / "profiles" / "teacher.txt");
    return text;
}

}  // namespace lsim::agents
