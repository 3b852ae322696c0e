#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lsim/corpus/exam.hpp"

namespace lsim::assess {

/// Canonical form used for every answer comparison: lowercased, trimmed,
/// unquoted, without terminal punctuation, single-spaced. For multiple-choice
/// items an answer that identifies exactly one option becomes that option's
/// (lowercase) label.
std::string normalize_answer(std::string_view raw, const corpus::Question& q);

/// Text-only part of normalize_answer (no option resolution).
std::string clean_answer(std::string_view raw);

struct GivenAnswer {
    std::string question_id;
    std::string answer;
    std::string reasoning;
    std::optional<int> confidence;
};

struct GradedItem {
    std::string question_id;
    corpus::Category section = corpus::Category::weekly;
    std::string given;
    std::string normalized;
    bool correct = false;
    std::optional<int> confidence;
    std::string reasoning;
};

struct GradedAttempt {
    std::string exam_id;
    corpus::ExamKind exam_kind = corpus::ExamKind::weekly;
    std::string learner_id;
    std::vector<GradedItem> items;  // exam order
    double score = 0.0;             // percentage
    std::map<std::string, double> by_category;  // category name -> accuracy percentage
    std::map<std::string, int> category_sizes;
};

nlohmann::json to_json(const GradedAttempt& g);
GradedAttempt graded_from_json(const nlohmann::json& j);

/// Grade one learner's answers. Items without an answer are graded as blank.
/// Throws lsim::Error when an answer names a question that is not on the exam.
GradedAttempt grade(const std::vector<GivenAnswer>& answers, const corpus::Exam& exam,
                    const corpus::QuestionBank& bank, std::string learner_id);

struct TrapFlag {
    std::string trap_id;
    std::string source_id;
    bool gave_stale_source_answer = false;
};

/// The stale answer for a trap: its source question's key, normalized in the trap's context.
std::string stale_answer(const corpus::Question& trap, const corpus::QuestionBank& bank);

/// One flag per trap item on the graded exam.
std::vector<TrapFlag> trap_diagnosis(const GradedAttempt& attempt, const corpus::QuestionBank& bank);

}  // namespace lsim::assess
