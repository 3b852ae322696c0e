#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lsim::agents {

enum class LearnerId { deep, surface, lazy, general };
enum class Motivation { intrinsic, extrinsic, minimal_effort, none };
enum class DevStrategy { long_term, test_oriented, passive, none };

std::string_view to_string(LearnerId id);
std::string_view to_string(Motivation m);
std::string_view to_string(DevStrategy s);
std::optional<LearnerId> parse_learner_id(std::string_view s);

struct LearnerProfile {
    LearnerId learner_id = LearnerId::general;
    std::string display_name;
    Motivation motivation = Motivation::none;
    std::optional<int> initial_self_concept;
    DevStrategy dev_strategy = DevStrategy::none;
    std::string profile_prompt;

    std::string id() const { return std::string(to_string(learner_id)); }
};

/// The four built-in personas with persona text from assets/profiles.
const LearnerProfile& builtin_profile(LearnerId id);
const std::vector<LearnerId>& all_learners();

/// Teacher system prompt (assets/profiles/teacher.txt).
const std::string& teacher_profile_prompt();

}  // namespace lsim::agents
