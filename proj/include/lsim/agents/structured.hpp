#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace lsim::agents {

struct AnswerItem {
    int question_num = 0;
    std::string answer;
    std::string reasoning;
    std::optional<int> confidence;

    bool operator==(const AnswerItem&) const = default;
};

struct StructuredAnswerSet {
    std::vector<AnswerItem> answers;  // sorted by question_num
    std::string raw_text;
    int parse_attempts = 1;
};

enum class ChoiceKind { consolidation, reflection, pre_exam_review };
enum class Decision { work, rest };

std::string_view to_string(ChoiceKind k);
std::string_view to_string(Decision d);
std::optional<ChoiceKind> parse_choice_kind(std::string_view s);

struct StrategicChoice {
    ChoiceKind kind = ChoiceKind::consolidation;
    Decision decision = Decision::rest;
    /// Summary/reflection body, or the stated reason for a pre-exam choice.
    /// Always absent when decision == rest.
    std::optional<std::string> content;
};

struct SelfConceptUpdate {
    int score = 0;
    std::string description;
};

struct ModeratorRuling {
    bool end = false;
    std::string reason;
};

/// First balanced JSON object or array in `raw` that parses, tolerating code
/// fences and surrounding prose.
std::optional<nlohmann::json> extract_json(std::string_view raw);

/// Throws SchemaError unless `raw` holds answers numbered exactly 1..batch_size.
/// When `with_confidence` is set every answer must carry a 0-100 confidence.
StructuredAnswerSet parse_answer_set(std::string_view raw, std::size_t batch_size, bool with_confidence);
/// Inverse of parse_answer_set for the answer fields.
std::string render_answer_set(const std::vector<AnswerItem>& answers);

StrategicChoice parse_choice(std::string_view raw, ChoiceKind kind);
/// Score is returned as given (may be out of range); callers clamp.
SelfConceptUpdate parse_self_concept(std::string_view raw);
ModeratorRuling parse_moderator(std::string_view raw);

}  // namespace lsim::agents
